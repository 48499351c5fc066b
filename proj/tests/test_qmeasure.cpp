#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <groupoidal/qmeasure.hpp>
#include <groupoidal/rng.hpp>

#include <cmath>

using namespace groupoidal;

namespace {

State random_positive_state(const Groupoid& g, std::mt19937_64& rng) {
    std::vector<std::pair<double, State>> ensemble;
    double total = 0.0;
    for (int i = 0; i < 3; ++i) {
        std::vector<cplx> v(g.outcome_count());
        double norm2 = 0.0;
        for (auto& x : v) {
            x = cplx{2 * uniform_unit(rng) - 1, 2 * uniform_unit(rng) - 1};
            norm2 += std::norm(x);
        }
        for (auto& x : v) x /= std::sqrt(norm2);
        double w = uniform_unit(rng) + 0.1;
        total += w;
        ensemble.emplace_back(w, pure_state_from_vector(g, v));
    }
    for (auto& [w, s] : ensemble) w /= total;
    return mix(ensemble);
}

Event random_event(const Groupoid& g, std::mt19937_64& rng) {
    std::vector<int> ids;
    for (const Transition& t : g.transitions())
        if (uniform_unit(rng) < 0.5) ids.push_back(t.id);
    return make_event(g, ids);
}

}  // namespace

TEST_CASE("arrival events collect everything ending at an outcome") {
    Groupoid g = pair_groupoid(3);
    Event at2 = arrival_event(g, 2);
    // Transitions (2,j) for j = 0, 1, 2 — unit included.
    CHECK(at2.transitions.size() == 3);
    CHECK(at2.transitions.count(g.unit_at(2).value()) == 1);
    for (int tid : at2.transitions) CHECK(g.target(tid) == 2);

    CHECK_THROWS_AS(arrival_event(g, 9), std::invalid_argument);
    CHECK_THROWS_AS(make_event(g, {99}), std::invalid_argument);
}

TEST_CASE("a single path weighs the unit at its source") {
    Groupoid g = two_level_groupoid();
    std::vector<cplx> v{cplx{0.6, 0.0}, cplx{0.0, 0.8}};
    State rho = pure_state_from_vector(g, v);

    int alpha = g.transition_id_of_label("alpha").value();  // + -> -
    Event single = make_event(g, {alpha});
    CHECK(quantum_measure(rho, single) == doctest::Approx(0.36));  // |v_+|^2

    int alpha_inv = g.transition_id_of_label("alpha^-1").value();
    CHECK(quantum_measure(rho, make_event(g, {alpha_inv})) == doctest::Approx(0.64));
}

TEST_CASE("pairing is conjugate-symmetric for hermitian states") {
    std::mt19937_64 rng(31u);
    Groupoid g = pair_groupoid(3);
    for (int trial = 0; trial < 20; ++trial) {
        State rho = random_positive_state(g, rng);
        Event a = random_event(g, rng);
        Event b = random_event(g, rng);
        cplx dab = decoherence(rho, a, b);
        cplx dba = decoherence(rho, b, a);
        CHECK(std::abs(dab - std::conj(dba)) < 1e-12);
    }
}

TEST_CASE("both routes to the measure agree") {
    std::mt19937_64 rng(57u);
    for (const Groupoid& g : {pair_groupoid(2), pair_groupoid(4), two_level_groupoid(), cyclic_two_group()}) {
        CAPTURE(g.name());
        for (int trial = 0; trial < 25; ++trial) {
            State rho = random_positive_state(g, rng);
            Event a = random_event(g, rng);
            CHECK(quantum_measure(rho, a) == doctest::Approx(quantum_measure_dual(rho, a)).epsilon(1e-10));
        }
    }
}

TEST_CASE("measures of positive states are non-negative") {
    std::mt19937_64 rng(71u);
    Groupoid g = pair_groupoid(3);
    for (int trial = 0; trial < 30; ++trial) {
        State rho = random_positive_state(g, rng);
        Event a = random_event(g, rng);
        CHECK(quantum_measure(rho, a) >= -1e-12);
    }
}

TEST_CASE("interference is twice the real cross pairing") {
    std::mt19937_64 rng(83u);
    Groupoid g = pair_groupoid(3);
    for (int trial = 0; trial < 30; ++trial) {
        State rho = random_positive_state(g, rng);
        // Split a random event into two disjoint halves.
        Event whole = random_event(g, rng);
        std::vector<int> left, right;
        for (int tid : whole.transitions) (uniform_unit(rng) < 0.5 ? left : right).push_back(tid);
        Event a = make_event(g, left), b = make_event(g, right);

        double i = interference(rho, a, b);
        CHECK(i == doctest::Approx(2.0 * decoherence(rho, a, b).real()).epsilon(1e-10));
    }

    Event overlap = make_event(g, {0});
    CHECK_THROWS_AS(interference(random_positive_state(g, rng), overlap, overlap), std::invalid_argument);
}

TEST_CASE("classical states have additive measures") {
    std::mt19937_64 rng(97u);
    Groupoid g = pair_groupoid(4);
    State classical = uniform_unit_state(g);
    for (int trial = 0; trial < 20; ++trial) {
        Event whole = random_event(g, rng);
        std::vector<int> left, right;
        for (int tid : whole.transitions) (uniform_unit(rng) < 0.5 ? left : right).push_back(tid);
        CHECK(interference(classical, make_event(g, left), make_event(g, right)) == doctest::Approx(0.0));
    }

    // An arrival event weighs the unit at each path's source, so in the
    // fully connected pair groupoid it collects the state's whole mass.
    for (const Outcome& o : g.outcomes())
        CHECK(quantum_measure(classical, arrival_event(g, o.id)) == doctest::Approx(1.0));

    // For a vector state the same event weighs |Σ_j v_j|².
    State v = pure_state_from_vector(g, {cplx{0.5, 0}, cplx{0.5, 0}, cplx{0.5, 0}, cplx{-0.5, 0}});
    for (const Outcome& o : g.outcomes())
        CHECK(quantum_measure(v, arrival_event(g, o.id)) == doctest::Approx(1.0));  // (0.5*3-0.5)^2
}

TEST_CASE("superpositions interfere") {
    // Balanced vector state on a two-outcome system: paths into the lower
    // outcome interfere constructively.
    Groupoid g = two_level_groupoid();
    const double r = 1.0 / std::sqrt(2.0);
    State rho = pure_state_from_vector(g, {cplx{r, 0}, cplx{r, 0}});

    int alpha = g.transition_id_of_label("alpha").value();
    int unit_minus = g.unit_at(g.outcome_id_of_label("-").value()).value();
    Event via_alpha = make_event(g, {alpha});
    Event stay = make_event(g, {unit_minus});

    CHECK(quantum_measure(rho, via_alpha) == doctest::Approx(0.5));
    CHECK(quantum_measure(rho, stay) == doctest::Approx(0.5));
    // The union carries measure 2, not 1: interference of strength 1.
    CHECK(interference(rho, via_alpha, stay) == doctest::Approx(1.0));

    // The arrival event at "-" is exactly that union.
    Event arrive = arrival_event(g, g.outcome_id_of_label("-").value());
    CHECK(event_union(via_alpha, stay).transitions == arrive.transitions);
    CHECK(quantum_measure(rho, arrive) == doctest::Approx(2.0));
}
