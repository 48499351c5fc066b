#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <groupoidal/algebra.hpp>
#include <groupoidal/rng.hpp>

#include <vector>

using namespace groupoidal;

namespace {

std::vector<Groupoid> corpus() {
    std::vector<Groupoid> zoo;
    zoo.push_back(pair_groupoid(2));
    zoo.push_back(pair_groupoid(3));
    zoo.push_back(two_level_groupoid());
    zoo.push_back(cyclic_two_group());
    return zoo;
}

AlgebraElement random_element(const Groupoid& g, std::mt19937_64& rng) {
    AlgebraElement e(g);
    for (const Transition& t : g.transitions()) {
        if (uniform_unit(rng) < 0.4) continue;  // keep supports sparse-ish
        e.set_coefficient(t.id, cplx{2 * uniform_unit(rng) - 1, 2 * uniform_unit(rng) - 1});
    }
    return e;
}

}  // namespace

TEST_CASE("delta products follow the composition table") {
    for (const Groupoid& g : corpus()) {
        CAPTURE(g.name());
        for (const Transition& a : g.transitions()) {
            for (const Transition& b : g.transitions()) {
                AlgebraElement prod = convolve(AlgebraElement::delta(g, a.id), AlgebraElement::delta(g, b.id));
                auto c = g.compose(a.id, b.id);
                if (c) {
                    CHECK(approx_equal(prod, AlgebraElement::delta(g, *c)));
                } else {
                    CHECK(prod.is_zero());
                }
            }
        }
    }
}

TEST_CASE("pair groupoid algebra is the matrix algebra") {
    // Independent oracle: f |-> A with A[i][j] = f((i,j)) intertwines
    // convolution with matrix multiplication and adjoint with conjugate
    // transpose.
    const int n = 4;
    Groupoid g = pair_groupoid(n);
    auto tid = [&](int i, int j) { return g.transition_id_of_label("(" + std::to_string(i) + "," + std::to_string(j) + ")").value(); };

    std::mt19937_64 rng(20260819u);
    for (int trial = 0; trial < 25; ++trial) {
        AlgebraElement f = random_element(g, rng);
        AlgebraElement h = random_element(g, rng);

        std::vector<std::vector<cplx>> A(n, std::vector<cplx>(n)), B(n, std::vector<cplx>(n)),
            C(n, std::vector<cplx>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                A[i][j] = f.coefficient(tid(i, j));
                B[i][j] = h.coefficient(tid(i, j));
            }
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < n; ++j) C[i][k] += A[i][j] * B[j][k];

        AlgebraElement prod = convolve(f, h);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) CHECK(std::abs(prod.coefficient(tid(i, k)) - C[i][k]) < 1e-9);

        AlgebraElement star = f.adjoint();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(std::abs(star.coefficient(tid(i, j)) - std::conj(A[j][i])) < 1e-12);
    }
}

TEST_CASE("convolution is associative and the unit is neutral") {
    std::mt19937_64 rng(7u);
    for (const Groupoid& g : corpus()) {
        CAPTURE(g.name());
        AlgebraElement one = algebra_unit(g);
        for (int trial = 0; trial < 20; ++trial) {
            AlgebraElement f = random_element(g, rng);
            AlgebraElement h = random_element(g, rng);
            AlgebraElement k = random_element(g, rng);
            CHECK(approx_equal(convolve(convolve(f, h), k), convolve(f, convolve(h, k))));
            CHECK(approx_equal(convolve(one, f), f));
            CHECK(approx_equal(convolve(f, one), f));
        }
    }
}

TEST_CASE("adjoint is a conjugate-linear anti-automorphism") {
    std::mt19937_64 rng(11u);
    for (const Groupoid& g : corpus()) {
        CAPTURE(g.name());
        for (int trial = 0; trial < 20; ++trial) {
            AlgebraElement f = random_element(g, rng);
            AlgebraElement h = random_element(g, rng);
            cplx lambda{uniform_unit(rng) - 0.5, uniform_unit(rng) - 0.5};
            CHECK(approx_equal(f.adjoint().adjoint(), f));
            CHECK(approx_equal((f + h).adjoint(), f.adjoint() + h.adjoint()));
            CHECK(approx_equal((lambda * f).adjoint(), std::conj(lambda) * f.adjoint()));
            CHECK(approx_equal(convolve(f, h).adjoint(), convolve(h.adjoint(), f.adjoint())));
        }
    }
    Groupoid g3 = pair_groupoid(3);
    AlgebraElement one = algebra_unit(g3);
    CHECK(approx_equal(one.adjoint(), one));
    CHECK(approx_equal(convolve(one, one), one));
}

TEST_CASE("convolution distributes over addition") {
    std::mt19937_64 rng(13u);
    Groupoid g = pair_groupoid(3);
    for (int trial = 0; trial < 20; ++trial) {
        AlgebraElement f = random_element(g, rng);
        AlgebraElement h = random_element(g, rng);
        AlgebraElement k = random_element(g, rng);
        CHECK(approx_equal(convolve(f, h + k), convolve(f, h) + convolve(f, k)));
        CHECK(approx_equal(convolve(f + h, k), convolve(f, k) + convolve(h, k)));
    }
}

TEST_CASE("cancellation prunes support") {
    Groupoid g = two_level_groupoid();
    AlgebraElement f = AlgebraElement::delta(g, g.transition_id_of_label("alpha").value());
    AlgebraElement diff = f - f;
    CHECK(diff.is_zero());
    CHECK(diff.support().empty());
    CHECK(diff.norm() == 0.0);

    AlgebraElement tiny = f;
    tiny.set_coefficient(f.support()[0], 1e-15);
    CHECK(tiny.is_zero());
}

TEST_CASE("norm behaves like an l2 norm on coefficients") {
    Groupoid g = pair_groupoid(2);
    AlgebraElement f(g);
    f.set_coefficient(0, cplx{3, 0});
    f.set_coefficient(3, cplx{0, 4});
    CHECK(f.norm() == doctest::Approx(5.0));
    CHECK((2.0 * f).norm() == doctest::Approx(10.0));
}

TEST_CASE("elements of different groupoids do not mix") {
    Groupoid g = pair_groupoid(2);
    Groupoid h = cyclic_two_group();
    AlgebraElement f(g), k(h);
    CHECK_THROWS_AS(f += k, std::invalid_argument);
    CHECK_THROWS_AS(convolve(f, k), std::invalid_argument);
    CHECK_THROWS_AS(AlgebraElement::delta(g, 99), std::invalid_argument);

    // Equal groupoids held in different objects interoperate.
    Groupoid g2 = pair_groupoid(2);
    AlgebraElement f2(g2);
    CHECK_NOTHROW(f += f2);
}
