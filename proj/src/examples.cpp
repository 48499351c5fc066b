#include "groupoidal/examples.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "groupoidal/independence.hpp"
#include "groupoidal/products.hpp"
#include "groupoidal/qmeasure.hpp"
#include "groupoidal/representation.hpp"

namespace groupoidal {

namespace {

Groupoid make_eprb_groupoid() {
    std::vector<Outcome> outcomes{{0, "++"}, {1, "+-"}, {2, "-+"}, {3, "--"}};
    struct Arrow {
        int id;
        const char* label;
        int source;
        int target;
    };
    const Arrow arrows[] = {
        {0, "1_++", 0, 0},   {1, "1_+-", 1, 1},     {2, "1_-+", 2, 2},  {3, "1_--", 3, 3},
        {4, "alpha", 0, 1},  {5, "alpha^-1", 1, 0}, {6, "beta", 0, 2},  {7, "beta^-1", 2, 0},
        {8, "gamma", 2, 3},  {9, "gamma^-1", 3, 2}, {10, "delta", 1, 3}, {11, "delta^-1", 3, 1},
        {12, "eta", 0, 3},   {13, "eta^-1", 3, 0},  {14, "nu", 1, 2},   {15, "nu^-1", 2, 1},
    };
    std::vector<Transition> transitions;
    std::map<std::pair<int, int>, int> by_endpoints;
    for (const Arrow& a : arrows) {
        transitions.push_back({a.id, a.label, a.source, a.target});
        by_endpoints[{a.source, a.target}] = a.id;
    }
    std::unordered_map<int, int> unit_of{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
    std::unordered_map<int, int> inverse_of;
    for (const Arrow& a : arrows) inverse_of[a.id] = by_endpoints.at({a.target, a.source});
    // One transition per ordered pair of outcomes, so composites are fixed by
    // their endpoints.
    std::unordered_map<std::uint64_t, int> compose;
    for (const Arrow& f : arrows)
        for (const Arrow& h : arrows)
            if (f.source == h.target)
                compose[Groupoid::compose_key(f.id, h.id)] = by_endpoints.at({h.source, f.target});
    return Groupoid::from_parts("eprb", std::move(outcomes), std::move(transitions), std::move(unit_of),
                                std::move(inverse_of), std::move(compose));
}

// Full bijectivity and composition check of a candidate isomorphism map.
bool verified_isomorphism(const Groupoid& g, const Groupoid& h, const std::unordered_map<int, int>& map) {
    if (g.size() != h.size() || map.size() != g.size()) return false;
    std::set<int> image;
    for (const auto& [a, fa] : map) {
        if (!g.has_transition(a) || !h.has_transition(fa)) return false;
        image.insert(fa);
    }
    if (image.size() != g.size()) return false;
    for (const Transition& a : g.transitions())
        for (const Transition& b : g.transitions()) {
            const std::optional<int> gc = g.compose(a.id, b.id);
            const std::optional<int> hc = h.compose(map.at(a.id), map.at(b.id));
            if (gc.has_value() != hc.has_value()) return false;
            if (gc && map.at(*gc) != *hc) return false;
        }
    return true;
}

double yes(bool value) { return value ? 1.0 : 0.0; }

void finalize(ExampleReport& report) {
    report.all_pass =
        std::all_of(report.rows.begin(), report.rows.end(), [](const ReportRow& row) { return row.pass; });
}

int must_id(const Groupoid& g, const std::string& label) {
    const std::optional<int> id = g.transition_id_of_label(label);
    if (!id) throw std::logic_error("missing transition label " + label);
    return *id;
}

}  // namespace

void add_row(ExampleReport& report, std::string name, double computed, double reference, double tolerance) {
    const bool pass = std::abs(computed - reference) <= tolerance;
    report.rows.push_back({std::move(name), computed, reference, tolerance, pass});
}

std::string format_report(const ExampleReport& report) {
    std::ostringstream out;
    out << report.title << "\n";
    out << std::setprecision(12);
    for (const ReportRow& row : report.rows) {
        out << "  [" << (row.pass ? "PASS" : "FAIL") << "] " << row.name << ": computed " << row.computed
            << ", expected " << row.reference << " (tol " << row.tolerance << ")\n";
    }
    out << (report.all_pass ? "all rows pass" : "some rows FAIL") << "\n";
    return out.str();
}

EprbSystem::EprbSystem()
    : groupoid(make_eprb_groupoid()),
      rho0(State::from_values(groupoid,
                              {{1, 0.5}, {2, 0.5}, {14, -0.5}, {15, -0.5}})),
      psi{0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0},
      idle_particle2(transition_subgroupoid(groupoid, {0, 1, 2, 3, 6, 7, 10, 11}, "eprb-particle-2-idle")),
      idle_particle1(transition_subgroupoid(groupoid, {0, 1, 2, 3, 4, 5, 8, 9}, "eprb-particle-1-idle")) {}

EprbSystem build_eprb() { return EprbSystem(); }

ExampleReport run_eprb_report(const EprbSystem& system) {
    const Groupoid& g = system.groupoid;
    ExampleReport report;
    report.title = "spin-pair experiment";

    // Structure.
    add_row(report, "groupoid axioms violated", static_cast<double>(validate(g).size()), 0.0);
    add_row(report, "transitions declared", static_cast<double>(g.size()), 16.0);
    const DirectProduct detectors =
        direct_product({two_level_groupoid("1"), two_level_groupoid("2")}, "a2xa2");
    const std::optional<std::unordered_map<int, int>> iso = find_isomorphism(g, detectors.product);
    add_row(report, "product-of-two-detectors isomorphism (1=yes)",
            yes(iso.has_value() && verified_isomorphism(g, detectors.product, *iso)), 1.0);

    const int alpha = must_id(g, "alpha");
    const int alpha_inv = must_id(g, "alpha^-1");
    const int beta = must_id(g, "beta");
    const int beta_inv = must_id(g, "beta^-1");
    const int gamma = must_id(g, "gamma");
    const int gamma_inv = must_id(g, "gamma^-1");
    const int delta_t = must_id(g, "delta");
    const int eta = must_id(g, "eta");
    const int nu = must_id(g, "nu");
    const int nu_inv = must_id(g, "nu^-1");
    const int unit_pp = must_id(g, "1_++");

    add_row(report, "alpha^-1 after alpha equals 1_++ (1=yes)", yes(g.compose(alpha_inv, alpha) == unit_pp),
            1.0);
    add_row(report, "delta after alpha equals eta (1=yes)", yes(g.compose(delta_t, alpha) == eta), 1.0);
    add_row(report, "gamma after beta equals eta (1=yes)", yes(g.compose(gamma, beta) == eta), 1.0);
    add_row(report, "gamma^-1 after delta equals nu (1=yes)", yes(g.compose(gamma_inv, delta_t) == nu), 1.0);
    add_row(report, "alpha after beta^-1 equals nu (1=yes)", yes(g.compose(alpha, beta_inv) == nu), 1.0);
    add_row(report, "alpha after beta^-1 equals nu^-1 (1=yes)", yes(g.compose(alpha, beta_inv) == nu_inv),
            1.0);

    // State diagnostics.
    const State& rho0 = system.rho0;
    const StateReport state = check_state(rho0);
    add_row(report, "state hermiticity defect", state.hermiticity_defect, 0.0);
    add_row(report, "state positivity defect", std::max(0.0, -state.min_gram_eigenvalue), 0.0);
    add_row(report, "state mass", state.unit_mass.real(), 1.0);
    add_row(report, "rho0(1_+-)", rho0.value(must_id(g, "1_+-")).real(), 0.5);
    add_row(report, "rho0(1_-+)", rho0.value(must_id(g, "1_-+")).real(), 0.5);
    add_row(report, "rho0(nu)", rho0.value(nu).real(), -0.5);
    add_row(report, "rho0(nu^-1)", rho0.value(nu_inv).real(), -0.5);
    add_row(report, "rho0(delta_nu + delta_nu^-1)",
            expectation(rho0, AlgebraElement::delta(g, nu) + AlgebraElement::delta(g, nu_inv)).real(), -1.0);

    // Vector cross-check table: amplitudes against the fundamental
    // representation applied to psi.
    const MatrixRepresentation rep = fundamental_representation(g);
    Eigen::VectorXcd v(4);
    for (int i = 0; i < 4; ++i) v(i) = system.psi[static_cast<std::size_t>(i)];
    for (const Transition& t : g.transitions()) {
        const cplx model = (v.adjoint() * rep.matrix(t.id) * v)(0, 0);
        add_row(report, "vector model defect at " + t.label, std::abs(rho0.value(t.id) - model), 0.0, 1e-12);
    }

    // Quantum measures of the three arrival events.
    const Event at_pp = arrival_event(g, 0);
    const Event at_pm = arrival_event(g, 1);
    const Event at_mp = arrival_event(g, 2);
    const double mu_pp = quantum_measure(rho0, at_pp);
    const double mu_pm = quantum_measure(rho0, at_pm);
    const double mu_mp = quantum_measure(rho0, at_mp);
    add_row(report, "mu(arrival ++)", mu_pp, 0.0);
    add_row(report, "mu(arrival -+)", mu_mp, 0.5);
    add_row(report, "mu(arrival +-)", mu_pm, 0.5);
    add_row(report, "mu(arrival -+) + mu(arrival +-)", mu_mp + mu_pm, 1.0);
    add_row(report, "mu two-path defect at ++", std::abs(mu_pp - quantum_measure_dual(rho0, at_pp)), 0.0,
            1e-12);
    add_row(report, "mu two-path defect at -+", std::abs(mu_mp - quantum_measure_dual(rho0, at_mp)), 0.0,
            1e-12);
    add_row(report, "mu two-path defect at +-", std::abs(mu_pm - quantum_measure_dual(rho0, at_pm)), 0.0,
            1e-12);

    // Independence of the two idle-leg subalgebras.
    const AlgebraElement d_alpha_inv = AlgebraElement::delta(g, alpha_inv);
    const AlgebraElement d_beta = AlgebraElement::delta(g, beta);
    add_row(report, "rho0(delta_alpha^-1 * delta_beta)",
            expectation(rho0, d_alpha_inv * d_beta).real(), 0.5, 1e-12);
    add_row(report, "rho0(delta_beta * delta_alpha^-1)",
            expectation(rho0, d_beta * d_alpha_inv).real(), -0.5, 1e-12);
    add_row(report, "rho0(delta_alpha^-1)", expectation(rho0, d_alpha_inv).real(), 0.0, 1e-12);
    add_row(report, "rho0(delta_beta)", expectation(rho0, d_beta).real(), 0.0, 1e-12);

    const std::vector<Member> members{
        member_from_subgroupoid(g, system.idle_particle2, "particle 1"),
        member_from_subgroupoid(g, system.idle_particle1, "particle 2"),
    };
    const Witness witness = evaluate_word(IndependenceKind::usual, rho0, members, {0, 1},
                                          {d_beta, d_alpha_inv});
    add_row(report, "idle-leg witness violation |rho0(ab) - rho0(a)rho0(b)|", witness.violation, 0.5, 1e-12);
    IndependenceParams params;
    params.trials = 200;
    params.max_word_length = 4;
    params.seed = 1;
    params.jobs = 1;
    const IndependenceReport generalized = check_generalized_independence(rho0, members, params);
    add_row(report, "generalized checker rejects idle-leg independence (1=yes)", yes(!generalized.holds),
            1.0);

    // Restricted states: freezing one detector leaves a classical marginal.
    const struct {
        const char* prefix;
        const Groupoid* sub;
    } marginals[] = {
        {"particle-1 marginal", &system.idle_particle2},
        {"particle-2 marginal", &system.idle_particle1},
    };
    for (const auto& m : marginals) {
        const State restricted = restrict_state(rho0, *m.sub);
        double unit_mass = 0.0;
        for (const Outcome& o : m.sub->outcomes()) unit_mass += restricted.value(*g.unit_at(o.id)).real();
        add_row(report, std::string(m.prefix) + " mass", unit_mass, 1.0);
        add_row(report, std::string(m.prefix) + " p(++)", restricted.value(must_id(g, "1_++")).real(), 0.0);
        add_row(report, std::string(m.prefix) + " p(+-)", restricted.value(must_id(g, "1_+-")).real(), 0.5);
        add_row(report, std::string(m.prefix) + " p(-+)", restricted.value(must_id(g, "1_-+")).real(), 0.5);
        add_row(report, std::string(m.prefix) + " p(--)", restricted.value(must_id(g, "1_--")).real(), 0.0);
        double off_unit = 0.0;
        for (const Transition& t : m.sub->transitions())
            if (t.source != t.target) off_unit += std::abs(restricted.value(t.id));
        add_row(report, std::string(m.prefix) + " off-unit mass", off_unit, 0.0);
    }

    finalize(report);
    return report;
}

namespace {

FreeProductSpec disjoint_spec() {
    return make_free_product_spec("a2+a2-disjoint",
                                  {{0, "+_a"}, {1, "-_a"}, {2, "+_b"}, {3, "-_b"}},
                                  {two_level_groupoid("a"), two_level_groupoid("b")},
                                  {{{0, 0}, {1, 1}}, {{0, 2}, {1, 3}}});
}

FreeProductSpec chain_spec() {
    return make_free_product_spec("a2*a2-one-shared",
                                  {{0, "+"}, {1, "0"}, {2, "-"}},
                                  {two_level_groupoid("a"), two_level_groupoid("b")},
                                  {{{0, 0}, {1, 1}}, {{0, 1}, {1, 2}}});
}

FreeProductSpec tube_spec() {
    return make_free_product_spec("a2*a2-both-shared",
                                  {{0, "+"}, {1, "-"}},
                                  {two_level_groupoid("a"), two_level_groupoid("b")},
                                  {{{0, 0}, {1, 1}}, {{0, 0}, {1, 1}}});
}

int word_id_of(const BoundedFreeProduct& fp, std::vector<Letter> letters, int anchor = -1) {
    return fp.word_id(reduce(fp.spec, Word{std::move(letters), anchor}));
}

// Signed count of first-factor flips; the section through the second factor
// carries winding zero.
int winding(const BoundedFreeProduct& fp, int transition_id) {
    const Groupoid& first = fp.spec.factors[0];
    int n = 0;
    for (const Letter& l : fp.word_of(transition_id).letters) {
        if (l.factor != 0) continue;
        const int s = first.source(l.transition);
        const int t = first.target(l.transition);
        if (s == t) continue;
        n += (s == 0) ? 1 : -1;
    }
    return n;
}

}  // namespace

ExampleReport run_a2_star_a2_gallery(int max_word_length) {
    if (max_word_length < 4)
        throw std::invalid_argument("run_a2_star_a2_gallery: max_word_length must be at least 4");
    const int bound = max_word_length;
    ExampleReport report;
    report.title = "two detectors glued three ways";

    // Case 1: no shared outcomes.  The free product degenerates to a disjoint
    // union and the algebra to a direct sum.
    {
        const BoundedFreeProduct fp = fp_groupoid(disjoint_spec(), bound);
        const Groupoid& gg = fp.groupoid;
        add_row(report, "case 1: words", static_cast<double>(gg.size()), 8.0);
        add_row(report, "case 1: saturated at the bound (1=yes)", yes(fp.saturated), 1.0);
        add_row(report, "case 1: axioms violated", static_cast<double>(validate(gg).size()), 0.0);
        add_row(report, "case 1: connected components", static_cast<double>(connected_components(gg).size()),
                2.0);
        bool embeds = true;
        for (std::size_t f = 0; f < 2; ++f)
            embeds = embeds && is_subgroupoid(fp.spec.factors[f], gg, canonical_embedding(fp, f));
        add_row(report, "case 1: factors embed as subgroupoids (1=yes)", yes(embeds), 1.0);

        const std::unordered_map<int, int> emb_a = canonical_embedding(fp, 0);
        const std::unordered_map<int, int> emb_b = canonical_embedding(fp, 1);
        double cross = 0.0;
        for (const auto& [fa, wa] : emb_a)
            for (const auto& [fb, wb] : emb_b) {
                cross = std::max(cross, (AlgebraElement::delta(gg, wa) * AlgebraElement::delta(gg, wb)).norm());
                cross = std::max(cross, (AlgebraElement::delta(gg, wb) * AlgebraElement::delta(gg, wa)).norm());
            }
        add_row(report, "case 1: cross-factor products vanish (max norm)", cross, 0.0, 1e-12);

        // Outcome positions 0,1 belong to the first detector, 2,3 to the
        // second; every matrix must be block-diagonal in that split.
        const MatrixRepresentation rep = fundamental_representation(gg);
        std::unordered_map<int, int> block;
        for (std::size_t pos = 0; pos < gg.outcomes().size(); ++pos)
            block[static_cast<int>(pos)] = gg.outcomes()[pos].id <= 1 ? 0 : 1;
        double block_defect = 0.0;
        for (const Transition& t : gg.transitions()) {
            const Eigen::MatrixXcd& m = rep.matrix(t.id);
            for (int r = 0; r < m.rows(); ++r)
                for (int c = 0; c < m.cols(); ++c)
                    if (block.at(r) != block.at(c)) block_defect = std::max(block_defect, std::abs(m(r, c)));
        }
        add_row(report, "case 1: fundamental representation block defect", block_defect, 0.0, 1e-12);

        AlgebraElement unit_sum = algebra_unit(gg);
        for (const auto& [fa, wa] : emb_a)
            if (fp.spec.factors[0].source(fa) == fp.spec.factors[0].target(fa))
                unit_sum -= AlgebraElement::delta(gg, wa);
        for (const auto& [fb, wb] : emb_b)
            if (fp.spec.factors[1].source(fb) == fp.spec.factors[1].target(fb))
                unit_sum -= AlgebraElement::delta(gg, wb);
        add_row(report, "case 1: unit splits across components (max defect)", unit_sum.norm(), 0.0, 1e-12);
    }

    // Case 2: one shared outcome.  The free product closes up into the
    // three-level system, with the shared middle outcome mediating the only
    // surviving mixed products.
    {
        const BoundedFreeProduct fp = fp_groupoid(chain_spec(), bound);
        const Groupoid& gg = fp.groupoid;
        add_row(report, "case 2: words", static_cast<double>(gg.size()), 9.0);
        add_row(report, "case 2: saturated at the bound (1=yes)", yes(fp.saturated), 1.0);
        add_row(report, "case 2: axioms violated", static_cast<double>(validate(gg).size()), 0.0);
        const std::optional<std::unordered_map<int, int>> iso = find_isomorphism(gg, pair_groupoid(3));
        add_row(report, "case 2: three-level isomorphism verified on all pairs (1=yes)",
                yes(iso.has_value() && verified_isomorphism(gg, pair_groupoid(3), *iso)), 1.0);

        // Factor generators as words: alpha_a = {factor 0, id 2}, inverse id 1.
        const int wa = word_id_of(fp, {Letter{0, 2}});
        const int wa_inv = word_id_of(fp, {Letter{0, 1}});
        const int wb = word_id_of(fp, {Letter{1, 2}});
        const int wb_inv = word_id_of(fp, {Letter{1, 1}});
        const std::vector<int> a_side{wa, wa_inv};
        const std::vector<int> b_side{wb, wb_inv};
        int survivors = 0;
        for (int x : a_side)
            for (int y : b_side) {
                if (!(AlgebraElement::delta(gg, x) * AlgebraElement::delta(gg, y)).is_zero()) ++survivors;
                if (!(AlgebraElement::delta(gg, y) * AlgebraElement::delta(gg, x)).is_zero()) ++survivors;
            }
        add_row(report, "case 2: surviving mixed generator products", static_cast<double>(survivors), 2.0);

        const int chain_word = word_id_of(fp, {Letter{1, 2}, Letter{0, 2}});
        const AlgebraElement survivor = AlgebraElement::delta(gg, wb) * AlgebraElement::delta(gg, wa);
        const bool survivor_ok = chain_word >= 0 &&
                                 approx_equal(survivor, AlgebraElement::delta(gg, chain_word), 1e-12);
        add_row(report, "case 2: survivor is alpha_b after alpha_a (1=yes)", yes(survivor_ok), 1.0);
        const AlgebraElement adjoint_survivor =
            AlgebraElement::delta(gg, wa_inv) * AlgebraElement::delta(gg, wb_inv);
        add_row(report, "case 2: adjoint survivor matches (1=yes)",
                yes(approx_equal(adjoint_survivor, survivor.adjoint(), 1e-12)), 1.0);

        // Unit-mediated products associate: moving a shared unit across the
        // product changes nothing.
        double balance = 0.0;
        std::vector<int> unit_words;
        for (const Outcome& o : fp.spec.outcomes) unit_words.push_back(fp.word_id(Word{{}, o.id}));
        for (int x : a_side)
            for (int u : unit_words)
                for (int y : b_side) {
                    const AlgebraElement dx = AlgebraElement::delta(gg, x);
                    const AlgebraElement du = AlgebraElement::delta(gg, u);
                    const AlgebraElement dy = AlgebraElement::delta(gg, y);
                    balance = std::max(balance, ((dx * du) * dy - dx * (du * dy)).norm());
                    balance = std::max(balance, ((dy * du) * dx - dy * (du * dx)).norm());
                }
        add_row(report, "case 2: unit-mediated products associate (max defect)", balance, 0.0, 1e-12);
    }

    // Case 3: both outcomes shared.  The free product is infinite; words are
    // classified by a winding number and their endpoints.
    {
        const BoundedFreeProduct fp = fp_groupoid(tube_spec(), bound);
        const Groupoid& gg = fp.groupoid;
        const int half = bound / 2;
        add_row(report, "case 3: words within bound", static_cast<double>(gg.size()),
                static_cast<double>(2 + 4 * bound));
        add_row(report, "case 3: saturated at the bound (1=yes)", yes(fp.saturated), 0.0);
        // The truncation keeps a partial compose table: entries must agree
        // with word composition, and every missing composite must be a word
        // that outgrows the bound.
        bool truncation_coherent = true;
        for (const Transition& a : gg.transitions())
            for (const Transition& b : gg.transitions()) {
                if (!gg.composable(a.id, b.id)) continue;
                const Word product = compose_words(fp.spec, fp.word_of(a.id), fp.word_of(b.id));
                const std::optional<int> entry = gg.compose(a.id, b.id);
                if (entry)
                    truncation_coherent = truncation_coherent && *entry == fp.word_id(product);
                else
                    truncation_coherent =
                        truncation_coherent && static_cast<int>(product.letters.size()) > bound;
            }
        add_row(report, "case 3: compose table matches word composition (1=yes)", yes(truncation_coherent),
                1.0);
        bool embeds = true;
        for (std::size_t f = 0; f < 2; ++f)
            embeds = embeds && is_subgroupoid(fp.spec.factors[f], gg, canonical_embedding(fp, f));
        add_row(report, "case 3: factors embed as subgroupoids (1=yes)", yes(embeds), 1.0);

        // Loops at the shared + outcome: exactly the powers of the
        // double-flip loop (a-flip up, b-flip back).
        std::set<int> loops;
        for (const Transition& t : gg.transitions())
            if (t.source == 0 && t.target == 0) loops.insert(t.id);
        add_row(report, "case 3: loops at + within bound", static_cast<double>(loops.size()),
                static_cast<double>(2 * half + 1));

        const Word double_flip{{Letter{1, 1}, Letter{0, 2}}, -1};
        std::set<int> powers;
        Word cur{{}, 0};
        powers.insert(fp.word_id(cur));
        for (int n = 1; n <= half; ++n) {
            cur = compose_words(fp.spec, double_flip, cur);
            powers.insert(fp.word_id(cur));
            powers.insert(fp.word_id(inverse_word(fp.spec, cur)));
        }
        add_row(report, "case 3: loops are powers of the double flip (1=yes)", yes(loops == powers), 1.0);
        const int flip_id = word_id_of(fp, double_flip.letters);
        add_row(report, "case 3: double-flip loop winding", static_cast<double>(winding(fp, flip_id)), 1.0);

        std::set<int> loop_windings;
        for (int tid : loops) loop_windings.insert(winding(fp, tid));
        add_row(report, "case 3: distinct windings among + loops", static_cast<double>(loop_windings.size()),
                static_cast<double>(2 * half + 1));

        // Classification by (winding, source, target): injective, additive
        // along composition, and exactly filling the reachable range.
        std::set<std::tuple<int, int, int>> keys;
        for (const Transition& t : gg.transitions()) keys.insert({winding(fp, t.id), t.source, t.target});
        add_row(report, "case 3: winding classification injective (1=yes)", yes(keys.size() == gg.size()),
                1.0);

        double additivity = 0.0;
        for (const auto& [key, c] : gg.compose_table()) {
            const int a = static_cast<int>(static_cast<std::uint32_t>(key >> 32));
            const int b = static_cast<int>(static_cast<std::uint32_t>(key & 0xffffffffu));
            additivity = std::max(additivity,
                                  static_cast<double>(std::abs(winding(fp, c) - winding(fp, a) - winding(fp, b))));
        }
        add_row(report, "case 3: winding adds along composition (max defect)", additivity, 0.0, 1e-12);

        std::set<std::tuple<int, int, int>> expected;
        for (int n = -half; n <= half; ++n) {
            expected.insert({n, 0, 0});
            expected.insert({n, 1, 1});
        }
        for (int n = -((bound - 1) / 2); n <= (bound + 1) / 2; ++n) expected.insert({n, 0, 1});
        for (int n = -((bound + 1) / 2); n <= (bound - 1) / 2; ++n) expected.insert({n, 1, 0});
        add_row(report, "case 3: classification bijective onto expected range (1=yes)",
                yes(keys == expected), 1.0);

        bool section_flat = true;
        for (const auto& [fb, wbid] : canonical_embedding(fp, 1))
            section_flat = section_flat && winding(fp, wbid) == 0;
        add_row(report, "case 3: section words carry winding zero (1=yes)", yes(section_flat), 1.0);
    }

    finalize(report);
    return report;
}

}  // namespace groupoidal
