#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <groupoidal/products.hpp>
#include <groupoidal/rng.hpp>

#include <algorithm>
#include <set>

using namespace groupoidal;

namespace {

/// Two two-level factors glued along a middle outcome: ambient line -1, 0, 1.
FreeProductSpec chain_spec() {
    Groupoid a = two_level_groupoid("a");  // +_a -> -_a over -1 -> 0
    Groupoid b = two_level_groupoid("b");  // +_b -> -_b over 0 -> 1
    std::vector<Outcome> ambient{{0, "-1"}, {1, "0"}, {2, "1"}};
    int ap = a.outcome_id_of_label("+_a").value(), am = a.outcome_id_of_label("-_a").value();
    int bp = b.outcome_id_of_label("+_b").value(), bm = b.outcome_id_of_label("-_b").value();
    return make_free_product_spec("chain", ambient, {a, b}, {{{ap, 0}, {am, 1}}, {{bp, 1}, {bm, 2}}});
}

/// Two order-two groups at a single shared outcome.
FreeProductSpec dihedral_spec() {
    Groupoid a = cyclic_two_group("a");
    Groupoid b = cyclic_two_group("b");
    std::vector<Outcome> ambient{{0, "*"}};
    return make_free_product_spec("dihedral", ambient, {a, b}, {{{0, 0}}, {{0, 0}}});
}

/// Independent reducer applying rewrites in random order; used as a
/// confluence oracle against the deterministic one.
Word random_order_reduce(const FreeProductSpec& spec, Word w, std::mt19937_64& rng) {
    while (true) {
        struct Option {
            bool merge;
            std::size_t at;
        };
        std::vector<Option> options;
        for (std::size_t i = 0; i + 1 < w.letters.size(); ++i)
            if (w.letters[i].factor == w.letters[i + 1].factor) options.push_back({true, i});
        auto unit_at = [&](std::size_t i) {
            const Groupoid& f = spec.factors[w.letters[i].factor];
            return f.unit_at(f.source(w.letters[i].transition)) == w.letters[i].transition;
        };
        if (w.letters.size() >= 2)
            for (std::size_t i = 0; i < w.letters.size(); ++i)
                if (unit_at(i)) options.push_back({false, i});

        if (options.empty()) {
            if (w.letters.size() == 1 && unit_at(0)) {
                const Groupoid& f = spec.factors[w.letters[0].factor];
                w.anchor = spec.outcome_maps[w.letters[0].factor].at(f.source(w.letters[0].transition));
                w.letters.clear();
            }
            return w;
        }
        const Option pick = options[uniform_index(rng, static_cast<int>(options.size()))];
        if (pick.merge) {
            const Groupoid& f = spec.factors[w.letters[pick.at].factor];
            int c = f.compose(w.letters[pick.at].transition, w.letters[pick.at + 1].transition).value();
            w.letters[pick.at].transition = c;
            w.letters.erase(w.letters.begin() + pick.at + 1);
        } else {
            w.letters.erase(w.letters.begin() + pick.at);
        }
    }
}

/// Uniform consistent (not necessarily reduced) word of the given length.
Word random_word(const FreeProductSpec& spec, int length, std::mt19937_64& rng) {
    Word w;
    if (length == 0) {
        w.anchor = spec.outcomes[uniform_index(rng, static_cast<int>(spec.outcomes.size()))].id;
        return w;
    }
    int need = -1;  // ambient source constraint for the next (prepended) letter
    for (int step = 0; step < length; ++step) {
        std::vector<Letter> candidates;
        for (std::size_t k = 0; k < spec.factors.size(); ++k) {
            for (const Transition& t : spec.factors[k].transitions()) {
                int src = spec.outcome_maps[k].at(t.source);
                if (step == 0 || src == need) candidates.push_back({static_cast<int>(k), t.id});
            }
        }
        REQUIRE_FALSE(candidates.empty());
        Letter l = candidates[uniform_index(rng, static_cast<int>(candidates.size()))];
        w.letters.insert(w.letters.begin(), l);
        need = spec.outcome_maps[l.factor].at(spec.factors[l.factor].target(l.transition));
    }
    return w;
}

}  // namespace

TEST_CASE("direct product has componentwise structure") {
    Groupoid a = two_level_groupoid("a");
    Groupoid b = two_level_groupoid("b");
    DirectProduct dp = direct_product({a, b});

    CHECK(dp.product.outcome_count() == 4);
    CHECK(dp.product.size() == 16);
    CHECK(validate(dp.product).empty());

    int alpha_a = a.transition_id_of_label("alpha_a").value();
    int unit_bp = b.unit_at(b.outcome_id_of_label("+_b").value()).value();
    int pt = dp.tuple_to_transition({alpha_a, unit_bp});
    CHECK(dp.transition_tuple(pt) == std::vector<int>{alpha_a, unit_bp});
    CHECK(dp.product.transition(pt).label == "(alpha_a,1_+_b)");

    // Source and target are computed componentwise.
    auto src = dp.outcome_tuple(dp.product.source(pt));
    CHECK(src == std::vector<int>{a.source(alpha_a), b.source(unit_bp)});

    CHECK_THROWS_AS(dp.tuple_to_transition({alpha_a}), std::invalid_argument);
    CHECK_THROWS_AS(direct_product({}), std::invalid_argument);
}

TEST_CASE("product of pair groupoids is a pair groupoid") {
    DirectProduct dp = direct_product({pair_groupoid(2), pair_groupoid(2)});
    Groupoid p4 = pair_groupoid(4);
    CHECK(find_isomorphism(dp.product, p4).has_value());
}

TEST_CASE("projections are morphisms and the product mediates cones") {
    Groupoid a = two_level_groupoid("a");
    Groupoid b = cyclic_two_group("b");
    DirectProduct dp = direct_product({a, b});

    for (std::size_t k = 0; k < 2; ++k) {
        std::string why;
        CHECK(is_morphism(dp.product, dp.factors[k], projection_map(dp, k), &why));
    }

    // The diagonal cone a -> a, a -> a factors through a x a.
    DirectProduct sq = direct_product({a, a});
    std::unordered_map<int, int> id_leg;
    for (const Transition& t : a.transitions()) id_leg[t.id] = t.id;
    auto diag = mediate_into_product(sq, a, {id_leg, id_leg});
    REQUIRE(diag.has_value());
    CHECK(is_morphism(a, sq.product, *diag));
    for (std::size_t k = 0; k < 2; ++k) {
        auto proj = projection_map(sq, k);
        for (const Transition& t : a.transitions()) CHECK(proj.at(diag->at(t.id)) == t.id);
    }
}

TEST_CASE("padded factors are wide subgroupoids") {
    Groupoid a = two_level_groupoid("a");
    Groupoid b = two_level_groupoid("b");
    DirectProduct dp = direct_product({a, b});

    Groupoid pa = padded_factor(dp, 0);
    Groupoid pb = padded_factor(dp, 1);
    CHECK(pa.outcome_count() == 4);
    CHECK(pa.size() == a.size() * b.outcome_count());  // 8
    CHECK(validate(pa).empty());
    CHECK(is_subgroupoid(pa, dp.product, identity_embedding(pa)));
    CHECK(is_subgroupoid(pb, dp.product, identity_embedding(pb)));

    // The two padded factors overlap exactly in the units.
    std::set<int> sa, sb, inter;
    for (const Transition& t : pa.transitions()) sa.insert(t.id);
    for (const Transition& t : pb.transitions()) sb.insert(t.id);
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(inter, inter.begin()));
    std::set<int> units;
    for (const auto& [x, u] : dp.product.unit_table()) units.insert(u);
    CHECK(inter == units);
}

TEST_CASE("tensor factor elements multiply leg by leg") {
    Groupoid a = two_level_groupoid("a");
    Groupoid b = two_level_groupoid("b");
    DirectProduct dp = direct_product({a, b});

    int alpha_a = a.transition_id_of_label("alpha_a").value();
    int alpha_b = b.transition_id_of_label("alpha_b").value();
    AlgebraElement ea = tensor_factor_element(dp, 0, alpha_a);
    AlgebraElement eb = tensor_factor_element(dp, 1, alpha_b);

    // One term per outcome of the complementary factor.
    CHECK(ea.term_count() == b.outcome_count());
    CHECK(eb.term_count() == a.outcome_count());

    // Tensor legs commute and their product is the pure tensor.
    CHECK(approx_equal(ea * eb, eb * ea));
    AlgebraElement pure = AlgebraElement::delta(dp.product, dp.tuple_to_transition({alpha_a, alpha_b}));
    CHECK(approx_equal(ea * eb, pure));

    // Units embed to the algebra unit.
    AlgebraElement one(dp.product);
    for (const auto& [x, u] : a.unit_table()) one += tensor_factor_element(dp, 0, u);
    CHECK(approx_equal(one, algebra_unit(dp.product)));
}

TEST_CASE("free product spec validation") {
    Groupoid a = cyclic_two_group("a");
    std::vector<Outcome> ambient{{0, "*"}};
    CHECK_THROWS_AS(make_free_product_spec("bad", ambient, {a}, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_free_product_spec("bad", ambient, {a}, {{{0, 7}}}), std::invalid_argument);
    CHECK_THROWS_AS(make_free_product_spec("bad", ambient, {a}, {{}}), std::invalid_argument);

    Groupoid c = two_level_groupoid("c");
    // Both outcomes of c onto the single ambient outcome: not injective.
    CHECK_THROWS_AS(make_free_product_spec("bad", ambient, {c}, {{{0, 0}, {1, 0}}}), std::invalid_argument);
}

TEST_CASE("reduction reaches the expected normal forms") {
    FreeProductSpec spec = chain_spec();
    const Groupoid& a = spec.factors[0];
    const Groupoid& b = spec.factors[1];
    int alpha_a = a.transition_id_of_label("alpha_a").value();
    int alpha_a_inv = a.transition_id_of_label("alpha_a^-1").value();
    int alpha_b = b.transition_id_of_label("alpha_b").value();
    int unit_am = a.unit_at(a.outcome_id_of_label("-_a").value()).value();

    // Unit letters drop out.
    Word padded{{{1, alpha_b}, {0, unit_am}, {0, alpha_a}}, -1};
    Word lean{{{1, alpha_b}, {0, alpha_a}}, -1};
    CHECK(reduce(spec, padded) == reduce(spec, lean));
    CHECK(reduce(spec, lean).letters.size() == 2);

    // Same-factor neighbours merge; full cancellation anchors the unit word.
    Word cancel{{{0, alpha_a_inv}, {0, alpha_a}}, -1};
    Word reduced = reduce(spec, cancel);
    CHECK(reduced.letters.empty());
    CHECK(reduced.anchor == 0);  // ambient source of alpha_a

    // A lone unit letter becomes the anchored unit word.
    Word lone{{{0, unit_am}}, -1};
    CHECK(reduce(spec, lone) == Word{{}, 1});

    // Mismatched endpoints are rejected.
    Word broken{{{0, alpha_a}, {1, alpha_b}}, -1};
    CHECK_THROWS_AS(reduce(spec, broken), std::invalid_argument);
    CHECK_THROWS_AS(reduce(spec, Word{{}, 99}), std::invalid_argument);
}

TEST_CASE("reduction is confluent under random rewrite order") {
    std::mt19937_64 rng(20260819u);
    for (const FreeProductSpec& spec : {dihedral_spec(), chain_spec()}) {
        CAPTURE(spec.name);
        for (int trial = 0; trial < 500; ++trial) {
            Word w = random_word(spec, uniform_index(rng, 7), rng);
            Word deterministic = reduce(spec, w);
            Word randomized = random_order_reduce(spec, w, rng);
            CHECK(deterministic == randomized);
        }
    }
}

TEST_CASE("word composition satisfies the groupoid laws") {
    std::mt19937_64 rng(99u);
    for (const FreeProductSpec& spec : {dihedral_spec(), chain_spec()}) {
        CAPTURE(spec.name);
        for (int trial = 0; trial < 300; ++trial) {
            Word w = reduce(spec, random_word(spec, uniform_index(rng, 5), rng));

            // Inverse and unit laws.
            Word winv = inverse_word(spec, w);
            Word left = compose_words(spec, winv, w);
            CHECK(left == (Word{{}, ambient_source(spec, w)}));
            Word unitw{{}, ambient_target(spec, w)};
            CHECK(compose_words(spec, unitw, w) == w);

            // Associativity: build composable u, v by construction.
            Word u = reduce(spec, random_word(spec, uniform_index(rng, 4), rng));
            Word v = reduce(spec, random_word(spec, uniform_index(rng, 4), rng));
            if (ambient_source(spec, u) != ambient_target(spec, v)) continue;
            if (ambient_source(spec, v) != ambient_target(spec, w)) continue;
            CHECK(compose_words(spec, compose_words(spec, u, v), w) ==
                  compose_words(spec, u, compose_words(spec, v, w)));
        }
    }
}

TEST_CASE("enumerated words are reduced, distinct, and counted correctly") {
    FreeProductSpec dihedral = dihedral_spec();
    // One unit word plus two alternating words per length.
    CHECK(enumerate_words(dihedral, 8).size() == 17);
    CHECK(enumerate_words(dihedral, 3).size() == 7);
    CHECK(enumerate_words(dihedral, 0).size() == 1);

    FreeProductSpec chain = chain_spec();
    auto words = enumerate_words(chain, 5);
    CHECK(words.size() == 9);  // saturates at length 2

    for (const FreeProductSpec& spec : {dihedral, chain}) {
        auto ws = enumerate_words(spec, 4);
        for (const Word& w : ws) CHECK(reduce(spec, w) == w);
        for (std::size_t i = 0; i < ws.size(); ++i)
            for (std::size_t j = i + 1; j < ws.size(); ++j) CHECK_FALSE(ws[i] == ws[j]);
    }
}

TEST_CASE("saturated truncation of the chain spec is a pair groupoid") {
    BoundedFreeProduct fp = fp_groupoid(chain_spec(), 4);
    CHECK(fp.saturated);
    CHECK(fp.groupoid.size() == 9);
    CHECK(fp.groupoid.outcome_count() == 3);
    CHECK(validate(fp.groupoid).empty());
    CHECK(find_isomorphism(fp.groupoid, pair_groupoid(3)).has_value());

    // Mixed words compose as expected.
    const FreeProductSpec& spec = fp.spec;
    int alpha_a = spec.factors[0].transition_id_of_label("alpha_a").value();
    int alpha_b = spec.factors[1].transition_id_of_label("alpha_b").value();
    Word wa{{{0, alpha_a}}, -1}, wb{{{1, alpha_b}}, -1};
    int ia = fp.word_id(wa), ib = fp.word_id(wb);
    REQUIRE(ia >= 0);
    REQUIRE(ib >= 0);
    auto comp = fp.groupoid.compose(ib, ia);
    REQUIRE(comp.has_value());
    CHECK(fp.word_of(*comp).letters.size() == 2);
    CHECK(fp.groupoid.transition(*comp).label == "alpha_b*alpha_a");

    // Factors embed canonically.
    for (std::size_t k = 0; k < 2; ++k) {
        std::string why;
        CHECK(is_subgroupoid(spec.factors[k], fp.groupoid, canonical_embedding(fp, k), &why));
    }
}

TEST_CASE("unsaturated truncation keeps a partial composition table") {
    BoundedFreeProduct fp = fp_groupoid(dihedral_spec(), 2);
    CHECK_FALSE(fp.saturated);
    CHECK(fp.groupoid.size() == 5);  // 1, a, b, ab, ba

    int a = fp.groupoid.transition_id_of_label("flip_a").value();
    int ab = fp.groupoid.transition_id_of_label("flip_a*flip_b").value();
    CHECK(fp.groupoid.compose(a, a) == fp.groupoid.unit_at(0));
    CHECK_FALSE(fp.groupoid.compose(ab, a).has_value());  // aba exceeds the bound

    // The only defect of a truncation is missing compositions.
    for (const Violation& v : validate(fp.groupoid)) CHECK(v.axiom == "composition-totality");

    // Units, inverses, and bounded compositions are all present.
    BoundedFreeProduct fp8 = fp_groupoid(dihedral_spec(), 8);
    CHECK(fp8.groupoid.size() == 17);
    CHECK_FALSE(fp8.saturated);
    for (const Transition& t : fp8.groupoid.transitions()) {
        CHECK(fp8.groupoid.inverse(t.id).has_value());
        int u = fp8.groupoid.unit_at(fp8.groupoid.source(t.id)).value();
        CHECK(fp8.groupoid.compose(t.id, u) == t.id);
    }
}

TEST_CASE("free product mediates cocones") {
    BoundedFreeProduct fp = fp_groupoid(chain_spec(), 4);
    Groupoid p3 = pair_groupoid(3);
    auto t = [&](int i, int j) {
        return p3.transition_id_of_label("(" + std::to_string(i) + "," + std::to_string(j) + ")").value();
    };
    const Groupoid& a = fp.spec.factors[0];
    const Groupoid& b = fp.spec.factors[1];

    // Ambient outcomes -1, 0, 1 land on 0, 1, 2.
    std::unordered_map<int, int> leg_a{{a.unit_at(0).value(), t(0, 0)},
                                       {a.unit_at(1).value(), t(1, 1)},
                                       {a.transition_id_of_label("alpha_a").value(), t(1, 0)},
                                       {a.transition_id_of_label("alpha_a^-1").value(), t(0, 1)}};
    std::unordered_map<int, int> leg_b{{b.unit_at(0).value(), t(1, 1)},
                                       {b.unit_at(1).value(), t(2, 2)},
                                       {b.transition_id_of_label("alpha_b").value(), t(2, 1)},
                                       {b.transition_id_of_label("alpha_b^-1").value(), t(1, 2)}};

    auto med = mediate_from_free_product(fp, p3, {leg_a, leg_b});
    REQUIRE(med.has_value());
    CHECK(med->size() == fp.groupoid.size());

    // The mediating morphism extends the legs along the canonical embeddings.
    auto emb_a = canonical_embedding(fp, 0);
    for (const Transition& ft : a.transitions()) CHECK(med->at(emb_a.at(ft.id)) == leg_a.at(ft.id));

    // Here it is even bijective: the truncation is a disguised pair groupoid.
    std::set<int> image;
    for (const auto& [w, tid] : *med) image.insert(tid);
    CHECK(image.size() == 9);

    // Legs disagreeing on the shared outcome's unit cannot be mediated.
    std::unordered_map<int, int> bad_b = leg_b;
    bad_b[b.unit_at(0).value()] = t(2, 2);
    CHECK_FALSE(mediate_from_free_product(fp, p3, {leg_a, bad_b}).has_value());
}
