#ifndef GROUPOIDAL_PRODUCTS_HPP
#define GROUPOIDAL_PRODUCTS_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "groupoidal/algebra.hpp"
#include "groupoidal/groupoid.hpp"

namespace groupoidal {

/// Direct product of finitely many groupoids.  Outcomes and transitions are
/// tuples; everything is computed componentwise.  Product ids enumerate
/// tuples in mixed-radix order with the first factor most significant.
struct DirectProduct {
    std::vector<Groupoid> factors;
    Groupoid product;

    /// Component transition ids of a product transition.
    std::vector<int> transition_tuple(int product_transition_id) const;

    /// Component outcome ids of a product outcome.
    std::vector<int> outcome_tuple(int product_outcome_id) const;

    /// Product transition id of a component tuple; throws when any component
    /// id is undeclared.
    int tuple_to_transition(const std::vector<int>& component_ids) const;

    int tuple_to_outcome(const std::vector<int>& component_ids) const;
};

DirectProduct direct_product(std::vector<Groupoid> factors, const std::string& name = "");

/// Morphism from the product onto one factor: product transition id to
/// factor transition id.  Usable with is_morphism.
std::unordered_map<int, int> projection_map(const DirectProduct& dp, std::size_t factor);

/// Wide subgroupoid of the product whose transitions are units in every
/// component except `factor`.  Keeps product ids, so identity_embedding
/// exhibits it as a subgroupoid.
Groupoid padded_factor(const DirectProduct& dp, std::size_t factor);

/// Image of a factor basis transition under the tensor embedding: the given
/// factor transition in component `factor` and units elsewhere, summed over
/// all unit choices.  These elements realise one tensor leg of the product
/// algebra.
AlgebraElement tensor_factor_element(const DirectProduct& dp, std::size_t factor, int factor_transition_id);

/// Universal property of the product: given morphisms from h into each
/// factor, the tupled map is the unique morphism into the product commuting
/// with the projections.  Returns it, or nullopt when the tupling fails to
/// be a morphism.
std::optional<std::unordered_map<int, int>> mediate_into_product(
    const DirectProduct& dp, const Groupoid& h, const std::vector<std::unordered_map<int, int>>& legs);

/// One letter of a word: a transition of one named factor.
struct Letter {
    int factor = -1;
    int transition = -1;
    bool operator==(const Letter&) const = default;
};

/// A word over the factors of a free product.  Letters are listed leftmost
/// first, and the leftmost letter is the last step performed, so a word
/// w = α_r … α_1 maps the source of α_1 to the target of α_r.  The empty
/// word is the unit at `anchor` (an ambient outcome id); non-empty words
/// ignore the anchor.
struct Word {
    std::vector<Letter> letters;
    int anchor = -1;
    bool operator==(const Word&) const = default;
};

/// Presentation of a free product amalgamated over shared outcomes: an
/// ambient outcome set, the factor groupoids, and per-factor injections of
/// factor outcomes into the ambient set.  Factors interact exactly where
/// their outcome images overlap.
struct FreeProductSpec {
    std::string name;
    std::vector<Outcome> outcomes;
    std::vector<Groupoid> factors;
    std::vector<std::unordered_map<int, int>> outcome_maps;
};

/// Validates and assembles a presentation; throws std::invalid_argument on
/// non-injective or dangling outcome maps.
FreeProductSpec make_free_product_spec(std::string name, std::vector<Outcome> outcomes,
                                       std::vector<Groupoid> factors,
                                       std::vector<std::unordered_map<int, int>> outcome_maps);

int ambient_source(const FreeProductSpec& spec, const Word& word);
int ambient_target(const FreeProductSpec& spec, const Word& word);

/// Human-readable label: letter labels joined with '*' leftmost first, or
/// "1_<outcome>" for unit words.
std::string word_label(const FreeProductSpec& spec, const Word& word);

/// Normal form: merges adjacent same-factor letters, erases unit letters,
/// leftmost first, to a fixpoint.  A word whose letters cancel entirely
/// becomes the unit word at the appropriate ambient outcome.  Throws
/// std::invalid_argument when adjacent letters have mismatched ambient
/// endpoints or reference undeclared ids.
Word reduce(const FreeProductSpec& spec, Word word);

/// Concatenates then reduces; the left word is performed last.  Throws when
/// the endpoints do not match.
Word compose_words(const FreeProductSpec& spec, const Word& lhs, const Word& rhs);

/// Reverses and inverts letterwise.
Word inverse_word(const FreeProductSpec& spec, const Word& word);

/// All reduced words of length at most max_length, in a deterministic
/// breadth-first order: unit words first, then by length.
std::vector<Word> enumerate_words(const FreeProductSpec& spec, int max_length);

/// The free product truncated at a word-length bound.  Transition ids index
/// the enumeration; the composition table has entries exactly for the
/// composable pairs whose reduced product stays within the bound, and
/// `saturated` records whether that covered every composable pair.  When it
/// did, the groupoid is the whole (finite) free product.
struct BoundedFreeProduct {
    FreeProductSpec spec;
    int bound = 0;
    bool saturated = false;
    Groupoid groupoid;
    std::vector<Word> words;

    /// Transition id of a reduced word, or -1 when it exceeds the bound.
    int word_id(const Word& reduced_word) const;

    const Word& word_of(int transition_id) const;

private:
    std::unordered_map<std::string, int> index_;
    friend BoundedFreeProduct fp_groupoid(const FreeProductSpec&, int);
};

BoundedFreeProduct fp_groupoid(const FreeProductSpec& spec, int max_length);

/// Embedding of one factor as the words of length at most one: factor
/// transition id to word transition id.  Usable with is_subgroupoid.
std::unordered_map<int, int> canonical_embedding(const BoundedFreeProduct& fp, std::size_t factor);

/// Universal property of the coproduct on the truncation: given morphisms
/// from each factor into a target that agree on shared outcomes, extends
/// them letterwise to every word.  Returns the mediating map, or nullopt
/// when some word's image fails to compose in the target.
std::optional<std::unordered_map<int, int>> mediate_from_free_product(
    const BoundedFreeProduct& fp, const Groupoid& target,
    const std::vector<std::unordered_map<int, int>>& legs);

}  // namespace groupoidal

#endif
