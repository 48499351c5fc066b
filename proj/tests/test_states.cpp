#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <groupoidal/representation.hpp>
#include <groupoidal/rng.hpp>
#include <groupoidal/states.hpp>

#include <vector>

using namespace groupoidal;

namespace {

State random_positive_state(const Groupoid& g, std::mt19937_64& rng) {
    // Mixture of a few vector states: positive by construction.
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

}  // namespace

TEST_CASE("expectation extends amplitudes linearly") {
    Groupoid g = two_level_groupoid();
    int alpha = g.transition_id_of_label("alpha").value();
    State rho(g);
    rho.set_value(alpha, cplx{0.25, -0.5});

    CHECK(expectation(rho, AlgebraElement::delta(g, alpha)) == rho.value(alpha));
    AlgebraElement f = 2.0 * AlgebraElement::delta(g, alpha);
    CHECK(expectation(rho, f) == 2.0 * rho.value(alpha));

    Groupoid other = cyclic_two_group();
    CHECK_THROWS_AS(expectation(rho, AlgebraElement(other)), std::invalid_argument);
    CHECK_THROWS_AS(rho.set_value(99, 1.0), std::invalid_argument);
}

TEST_CASE("vector states are positive, hermitian, and reproduce inner products") {
    Groupoid g = pair_groupoid(3);
    std::vector<cplx> v{cplx{0.5, 0.1}, cplx{-0.3, 0.2}, cplx{0.0, 0.7}};
    State rho = pure_state_from_vector(g, v);

    // Amplitude of (i,j) (running j -> i) is conj(v_i) v_j.
    int t = g.transition_id_of_label("(2,1)").value();
    CHECK(std::abs(rho.value(t) - std::conj(v[2]) * v[1]) < 1e-15);

    StateReport report = check_state(rho);
    CHECK(report.hermitian);
    CHECK(report.positive);
    CHECK(report.min_gram_eigenvalue > -1e-12);

    // Unit mass is the squared length of the vector.
    double norm2 = 0.0;
    for (const auto& x : v) norm2 += std::norm(x);
    CHECK(std::abs(report.unit_mass - norm2) < 1e-12);

    CHECK_THROWS_AS(pure_state_from_vector(g, {1.0}), std::invalid_argument);
}

TEST_CASE("hermiticity and positivity defects are detected") {
    Groupoid g = two_level_groupoid();
    int alpha = g.transition_id_of_label("alpha").value();
    int alpha_inv = g.transition_id_of_label("alpha^-1").value();

    SUBCASE("non-hermitian amplitude") {
        State rho(g);
        rho.set_value(alpha, 1.0);  // inverse left at zero
        StateReport report = check_state(rho);
        CHECK_FALSE(report.hermitian);
        CHECK(report.hermiticity_defect == doctest::Approx(1.0));
        CHECK_FALSE(report.positive);
    }

    SUBCASE("hermitian but indefinite") {
        State rho(g);
        rho.set_value(alpha, 0.5);
        rho.set_value(alpha_inv, 0.5);
        StateReport report = check_state(rho);
        CHECK(report.hermitian);
        CHECK_FALSE(report.positive);
        CHECK(report.min_gram_eigenvalue == doctest::Approx(-0.5));
    }
}

TEST_CASE("unitarity and factorization checks") {
    Groupoid g = two_level_groupoid();

    // Unit-modulus vector: amplitudes multiply to one along inverses.
    State u = pure_state_from_vector(g, {cplx{1, 0}, cplx{0, 1}});
    CHECK(check_state(u).unitary);

    // Zero amplitudes are skipped, so a sharp classical state passes too.
    State sharp = pure_state_from_vector(g, {cplx{1, 0}, cplx{0, 0}});
    CHECK(check_state(sharp).unitary);

    // A balanced vector is neither unitary nor factorizable ...
    const double r = 1.0 / std::sqrt(2.0);
    State balanced = pure_state_from_vector(g, {cplx{r, 0}, cplx{r, 0}});
    StateReport rb = check_state(balanced);
    CHECK_FALSE(rb.unitary);
    CHECK(rb.unitarity_defect == doctest::Approx(0.75));
    CHECK_FALSE(rb.factorizable);

    // ... while the all-ones amplitude is both.
    State ones = all_ones_state(g);
    StateReport ro = check_state(ones);
    CHECK(ro.unitary);
    CHECK(ro.factorizable);
    CHECK(ro.positive);
    CHECK_FALSE(ro.normalized);  // mass equals the outcome count

    // all-ones coincides with the vector state of the all-ones vector.
    State ones2 = pure_state_from_vector(g, {1.0, 1.0});
    for (const Transition& t : g.transitions()) CHECK(ones.value(t.id) == ones2.value(t.id));
}

TEST_CASE("restriction conditions on a subobject and is transitive") {
    Groupoid g = pair_groupoid(3);
    std::vector<cplx> v{cplx{0.6, 0.0}, cplx{0.0, 0.8}, cplx{0.5, -0.5}};
    State rho = pure_state_from_vector(g, v);

    Groupoid sub = restriction(g, {0, 1});
    State cond = restrict_state(rho, sub);

    // Mass on the subobject is |v0|^2 + |v1|^2 = 1.
    const double mass = 0.36 + 0.64;
    int t01 = g.transition_id_of_label("(0,1)").value();
    CHECK(std::abs(cond.value(t01) - rho.value(t01) / mass) < 1e-15);

    // Conditioning renormalises: the restricted state has unit mass.
    CHECK(std::abs(check_state(cond).unit_mass - 1.0) < 1e-12);

    // Tower property: restricting in stages equals restricting directly.
    Groupoid corner = restriction(g, {0});
    State two_step = restrict_state(cond, corner);
    State one_step = restrict_state(rho, corner);
    for (const Transition& t : corner.transitions())
        CHECK(std::abs(two_step.value(t.id) - one_step.value(t.id)) < 1e-12);

    // No mass, no conditioning.
    State zero_side = pure_state_from_vector(g, {0.0, 0.0, 1.0});
    CHECK_THROWS_AS(restrict_state(zero_side, sub), std::invalid_argument);
}

TEST_CASE("uniform unit state is the classical trace") {
    Groupoid g = pair_groupoid(4);
    State rho = uniform_unit_state(g);
    StateReport report = check_state(rho);
    CHECK(report.positive);
    CHECK(report.normalized);
    for (const Transition& t : g.transitions()) {
        if (g.unit_at(t.source) == t.id)
            CHECK(rho.value(t.id) == cplx{0.25, 0});
        else
            CHECK(rho.value(t.id) == cplx{});
    }
}

TEST_CASE("separable states multiply componentwise") {
    Groupoid a = two_level_groupoid("a");
    Groupoid b = two_level_groupoid("b");
    DirectProduct dp = direct_product({a, b});

    const double r = 1.0 / std::sqrt(2.0);
    State sa = pure_state_from_vector(a, {cplx{r, 0}, cplx{0, r}});
    State sb = pure_state_from_vector(b, {cplx{0.6, 0}, cplx{0.8, 0}});
    State sep = separable_state(dp, {sa, sb});

    for (const Transition& t : dp.product.transitions()) {
        std::vector<int> parts = dp.transition_tuple(t.id);
        CHECK(std::abs(sep.value(t.id) - sa.value(parts[0]) * sb.value(parts[1])) < 1e-15);
    }

    // It agrees with the vector state of the Kronecker product vector.
    std::vector<cplx> kron{cplx{r, 0} * 0.6, cplx{r, 0} * 0.8, cplx{0, r} * 0.6, cplx{0, r} * 0.8};
    State direct = pure_state_from_vector(dp.product, kron);
    for (const Transition& t : dp.product.transitions())
        CHECK(std::abs(sep.value(t.id) - direct.value(t.id)) < 1e-15);

    CHECK(check_state(sep).positive);
    CHECK_THROWS_AS(separable_state(dp, {sa}), std::invalid_argument);
}

TEST_CASE("fundamental and left regular representations satisfy the laws") {
    for (const Groupoid& g : {pair_groupoid(3), two_level_groupoid(), cyclic_two_group()}) {
        CAPTURE(g.name());
        MatrixRepresentation fund = fundamental_representation(g);
        CHECK(fund.dimension == static_cast<int>(g.outcome_count()));
        CHECK(representation_defect(fund) < 1e-12);

        MatrixRepresentation reg = left_regular_representation(g);
        CHECK(reg.dimension == static_cast<int>(g.size()));
        CHECK(representation_defect(reg) < 1e-12);
    }
}

TEST_CASE("acting with the fundamental representation is matrix assembly") {
    Groupoid g = pair_groupoid(2);
    MatrixRepresentation fund = fundamental_representation(g);
    AlgebraElement f(g);
    f.set_coefficient(g.transition_id_of_label("(0,1)").value(), cplx{2, 1});
    f.set_coefficient(g.transition_id_of_label("(1,1)").value(), cplx{0, -1});
    Eigen::MatrixXcd m = fund.act(f);
    CHECK(m(0, 1) == cplx{2, 1});
    CHECK(m(1, 1) == cplx{0, -1});
    CHECK(m(0, 0) == cplx{});
    CHECK(m(1, 0) == cplx{});
}

TEST_CASE("the induced representation reproduces its state") {
    std::mt19937_64 rng(20260819u);
    for (const Groupoid& g : {pair_groupoid(2), pair_groupoid(3), two_level_groupoid(), cyclic_two_group()}) {
        CAPTURE(g.name());
        for (int trial = 0; trial < 5; ++trial) {
            State rho = random_positive_state(g, rng);
            GnsResult gns = gns_representation(rho);

            CHECK(representation_defect(gns.representation) < 1e-8);
            for (const Transition& t : g.transitions()) {
                cplx reproduced =
                    (gns.cyclic_vector.adjoint() * gns.representation.matrix(t.id) * gns.cyclic_vector)(0);
                CHECK(std::abs(reproduced - rho.value(t.id)) < 1e-9);
            }

            // The cyclic vector's squared length is the state's unit mass.
            cplx mass = check_state(rho).unit_mass;
            CHECK(std::abs(gns.cyclic_vector.squaredNorm() - mass.real()) < 1e-9);
        }
    }
}

TEST_CASE("induced representation dimensions collapse null directions") {
    Groupoid g = pair_groupoid(3);

    // Sharp vector state: only one outcome occupied, quotient is small.
    State sharp = pure_state_from_vector(g, {1.0, 0.0, 0.0});
    CHECK(gns_representation(sharp).rank == 3);

    // Full-rank trace state: nothing collapses.
    State trace = uniform_unit_state(g);
    CHECK(gns_representation(trace).rank == static_cast<int>(g.size()));

    // Indefinite amplitudes are rejected.
    Groupoid a2 = two_level_groupoid();
    State bad(a2);
    bad.set_value(a2.transition_id_of_label("alpha").value(), 0.5);
    bad.set_value(a2.transition_id_of_label("alpha^-1").value(), 0.5);
    CHECK_THROWS_AS(gns_representation(bad), std::invalid_argument);
}
