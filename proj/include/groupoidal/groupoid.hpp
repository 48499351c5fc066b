#ifndef GROUPOIDAL_GROUPOID_HPP
#define GROUPOIDAL_GROUPOID_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace groupoidal {

/// An object of a groupoid: a physical outcome.
struct Outcome {
    int id = -1;
    std::string label;

    bool operator==(const Outcome& other) const { return id == other.id && label == other.label; }
};

/// A morphism of a groupoid: a physical transition between outcomes.
struct Transition {
    int id = -1;
    std::string label;
    int source = -1;
    int target = -1;

    bool operator==(const Transition& other) const {
        return id == other.id && label == other.label && source == other.source && target == other.target;
    }
};

/**
 * A finite groupoid given by explicit tables.
 *
 * Composition is written right-to-left: compose(a, b) = a∘b is defined
 * exactly when source(a) == target(b), and runs b first, then a.
 *
 * Instances are plain values; the structural tables may violate the groupoid
 * axioms (validate() reports violations), but referential integrity of ids is
 * enforced at construction. All member functions are const; concurrent reads
 * are safe.
 */
class Groupoid {
public:
    Groupoid() = default;

    /// Builds a groupoid from raw tables. Throws std::invalid_argument on
    /// duplicate or dangling ids; does not check the groupoid axioms.
    static Groupoid from_parts(std::string name,
                               std::vector<Outcome> outcomes,
                               std::vector<Transition> transitions,
                               std::unordered_map<int, int> unit_of,
                               std::unordered_map<int, int> inverse_of,
                               std::unordered_map<std::uint64_t, int> compose);

    static std::uint64_t compose_key(int a, int b) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
               static_cast<std::uint64_t>(static_cast<std::uint32_t>(b));
    }

    const std::string& name() const { return name_; }
    const std::vector<Outcome>& outcomes() const { return outcomes_; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    const std::unordered_map<int, int>& unit_table() const { return unit_of_; }
    const std::unordered_map<int, int>& inverse_table() const { return inverse_of_; }
    const std::unordered_map<std::uint64_t, int>& compose_table() const { return compose_; }

    std::size_t outcome_count() const { return outcomes_.size(); }
    std::size_t size() const { return transitions_.size(); }

    bool has_outcome(int id) const { return outcome_index_.count(id) != 0; }
    bool has_transition(int id) const { return transition_index_.count(id) != 0; }

    const Outcome& outcome(int id) const;
    const Transition& transition(int id) const;

    int source(int transition_id) const { return transition(transition_id).source; }
    int target(int transition_id) const { return transition(transition_id).target; }

    /// Unit transition at an outcome; nullopt if the table has no entry.
    std::optional<int> unit_at(int outcome_id) const;
    /// Inverse transition; nullopt if the table has no entry.
    std::optional<int> inverse(int transition_id) const;
    /// a∘b if the table has an entry, nullopt otherwise.
    std::optional<int> compose(int a, int b) const;
    /// True when source(a) == target(b).
    bool composable(int a, int b) const;

    std::optional<int> outcome_id_of_label(const std::string& label) const;
    std::optional<int> transition_id_of_label(const std::string& label) const;

    bool operator==(const Groupoid& other) const;

private:
    std::string name_;
    std::vector<Outcome> outcomes_;
    std::vector<Transition> transitions_;
    std::unordered_map<int, int> unit_of_;
    std::unordered_map<int, int> inverse_of_;
    std::unordered_map<std::uint64_t, int> compose_;
    std::unordered_map<int, std::size_t> outcome_index_;
    std::unordered_map<int, std::size_t> transition_index_;
};

/// One violated axiom instance found by validate().
struct Violation {
    std::string axiom;
    std::string details;
};

/// Checks all groupoid axioms on the tables: totality and shape of units and
/// inverses, composability exactly on matching endpoints, endpoint coherence
/// of composites, unit laws, inverse laws, and associativity over all
/// composable triples. Returns every violation found (empty means valid).
std::vector<Violation> validate(const Groupoid& g);

/// The groupoid of pairs over n outcomes: one transition (i,j): j -> i for
/// every ordered pair, with (i,j)∘(j,k) = (i,k). Throws if n < 1.
Groupoid pair_groupoid(int n);

/// Copy of g with outcome / transition labels replaced where the maps have
/// entries. Ids are preserved.
Groupoid relabel(const Groupoid& g,
                 const std::unordered_map<int, std::string>& outcome_labels,
                 const std::unordered_map<int, std::string>& transition_labels,
                 const std::string& name = "");

/// Two-outcome qubit groupoid {1_+, 1_-, alpha, alpha^-1} with
/// alpha: + -> -. The suffix disambiguates copies (labels like "alpha_a").
Groupoid two_level_groupoid(const std::string& suffix = "");

/// One-object groupoid whose isotropy is Z/2: transitions {1_*, flip} with
/// flip∘flip = 1_*.
Groupoid cyclic_two_group(const std::string& suffix = "");

/// Full subgroupoid over the outcome subset: keeps every transition with both
/// endpoints in the subset. Ids and labels are preserved, so the identity
/// embedding exhibits the result as a subgroupoid of g.
Groupoid restriction(const Groupoid& g, const std::vector<int>& outcome_ids, const std::string& name = "");

/// Subgroupoid spanned by an explicit transition subset, keeping parent ids
/// and labels. The subset must contain the units and inverses of its members
/// and be closed under composition; throws std::invalid_argument otherwise.
Groupoid transition_subgroupoid(const Groupoid& g, const std::vector<int>& transition_ids,
                                const std::string& name = "");

/// Isotropy group at one outcome: all loops based there (as a one-object
/// groupoid with preserved ids).
Groupoid isotropy_group(const Groupoid& g, int outcome_id);

/// Transitions with source != target, plus all units (the "fundamental"
/// part reachable by actual change), as a subgroupoid candidate; for pair
/// groupoids this is g itself.
Groupoid fundamental_subgroupoid(const Groupoid& g);

/// Totally disconnected subgroupoid of units only.
Groupoid unit_subgroupoid(const Groupoid& g);

/// The identity embedding map on h's transitions (for subgroupoids built by
/// restriction and friends, which preserve parent ids).
std::unordered_map<int, int> identity_embedding(const Groupoid& h);

/// Checks that `embedding` (h-transition id -> g-transition id) exhibits h as
/// a subgroupoid of g: injective, endpoint-coherent (inducing an injective
/// outcome map), unit- and inverse-preserving, and composition-preserving
/// with composability reflected both ways on the image.
bool is_subgroupoid(const Groupoid& h, const Groupoid& g, const std::unordered_map<int, int>& embedding,
                    std::string* why = nullptr);

/// Checks that `map` (h-transition id -> g-transition id) is a groupoid
/// morphism (functor): units to units, inverses to inverses, composable pairs
/// to composable pairs with composites preserved.
bool is_morphism(const Groupoid& h, const Groupoid& g, const std::unordered_map<int, int>& map,
                 std::string* why = nullptr);

/// Connected components as lists of outcome ids (two outcomes are connected
/// when some transition joins them). Component order follows outcome order.
std::vector<std::vector<int>> connected_components(const Groupoid& g);

/// Searches for a groupoid isomorphism g -> h (transition id map). Returns
/// nullopt if none exists. Exponential in principle; intended for the small
/// groupoids handled here.
std::optional<std::unordered_map<int, int>> find_isomorphism(const Groupoid& g, const Groupoid& h);

}  // namespace groupoidal

#endif
