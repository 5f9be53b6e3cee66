#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kr/checked.hpp"
#include "kr/krmodules.hpp"

using namespace kr;

namespace {

Partition P(std::vector<int> parts) { return make_partition(std::move(parts)); }

}  // namespace

TEST_CASE("kr characters") {
    const CartanData a2 = cartan_data("A2");
    CHECK(kr_character(a2, 1, 0).terms == trivial_character(a2).terms);
    CHECK(kr_character(a2, 1, 2).terms == irreducible_character(a2, Weight{2, 0}).terms);
    CHECK(character_dimension(kr_character(a2, 1, 2)) == 6);

    // Type A restrictions stay irreducible at every node and level.
    for (const char *name : {"A1", "A2", "A3"}) {
        const CartanData cd = cartan_data(name);
        for (int node = 1; node <= cd.rank; ++node)
            for (int level = 1; level <= 4; ++level) {
                Weight hw = weight_scaled(fundamental_weight(cd, node), level);
                CHECK(kr_character(cd, node, level).terms ==
                      irreducible_character(cd, hw).terms);
            }
    }

    // Outside type A the decomposition has several nonnegative components in
    // general; the top component is V(m w_i) with multiplicity one.
    for (const char *name : {"B2", "B3", "C2", "C3", "G2"}) {
        const CartanData cd = cartan_data(name);
        for (int node = 1; node <= cd.rank; ++node)
            for (int level = 1; level <= 3; ++level) {
                auto dec = decompose(kr_character(cd, node, level));
                Weight hw = weight_scaled(fundamental_weight(cd, node), level);
                CHECK(dec.at(hw) == 1);
                for (const auto &[tau, mult] : dec) CHECK(mult > 0);
            }
    }

    // so_5 = sp_4 mirror pair: the long node stays irreducible, the short
    // node grows a trivial summand at level two.
    CHECK(decompose(kr_character(cartan_data("B2"), 1, 2)) ==
          std::map<Weight, std::int64_t>{{Weight{2, 0}, 1}});
    CHECK(decompose(kr_character(cartan_data("C2"), 1, 2)) ==
          std::map<Weight, std::int64_t>{{Weight{2, 0}, 1}, {Weight{0, 0}, 1}});
    CHECK(decompose(kr_character(cartan_data("B2"), 2, 2)) ==
          std::map<Weight, std::int64_t>{{Weight{0, 2}, 1}, {Weight{0, 0}, 1}});
}

TEST_CASE("tensor multiplicities") {
    const CartanData a1 = cartan_data("A1");
    CHECK(kr_tensor_multiplicities(KRTensor{a1, 1, P({1, 1})}) ==
          MultiplicityVector{{Weight{2}, 1}, {Weight{0}, 1}});
    CHECK(kr_tensor_multiplicities(KRTensor{a1, 1, P({3, 2})}) ==
          MultiplicityVector{{Weight{5}, 1}, {Weight{3}, 1}, {Weight{1}, 1}});

    // The top weight m w_i carries multiplicity exactly one, and dimensions
    // add up to the product of the factor dimensions.
    for (const char *name : {"A2", "B2", "C2", "G2"}) {
        const CartanData cd = cartan_data(name);
        for (int node = 1; node <= cd.rank; ++node) {
            const int m = 3;
            for (const Partition &p : partitions_of(m)) {
                auto mult = kr_tensor_multiplicities(KRTensor{cd, node, p});
                CHECK(mult.at(weight_scaled(fundamental_weight(cd, node), m)) == 1);
                std::int64_t total = 0;
                for (const auto &[tau, k] : mult)
                    total = checked_add(total,
                                        checked_mul(k, weyl_dimension(cd, tau)));
                std::int64_t expected = 1;
                for (int part : p.parts)
                    expected = checked_mul(expected,
                                           character_dimension(kr_character(cd, node, part)));
                CHECK(total == expected);
            }
        }
    }
}

TEST_CASE("multiplicity inequalities on small grids") {
    const CartanData a1 = cartan_data("A1");
    for (int m = 1; m <= 6; ++m) {
        auto rep = verify_positivity(a1, 1, m);
        CHECK(rep.violations.empty());
        if (m > 1) CHECK(rep.pairs_checked > 0);
    }

    const CartanData a2 = cartan_data("A2");
    for (int node : {1, 2})
        for (int m = 1; m <= 4; ++m) {
            auto rep = verify_positivity(a2, node, m);
            CHECK(rep.violations.empty());
        }

    const CartanData b2 = cartan_data("B2");
    for (int node : {1, 2}) CHECK(verify_positivity(b2, node, 3).violations.empty());

    // Covers-only and all-pairs modes agree.
    auto covers_rep = verify_positivity(a2, 1, 4, false);
    auto pairs_rep = verify_positivity(a2, 1, 4, true);
    CHECK(covers_rep.violations.empty());
    CHECK(pairs_rep.violations.empty());
    CHECK(pairs_rep.pairs_checked >= covers_rep.pairs_checked);

    // Multiplicity vectors are pointwise monotone along any cover chain.
    auto chain = cover_chain(P({4}), P({1, 1, 1, 1}));
    std::vector<MultiplicityVector> vecs;
    for (const Partition &p : chain)
        vecs.push_back(kr_tensor_multiplicities(KRTensor{b2, 1, p}));
    for (std::size_t t = 0; t + 1 < vecs.size(); ++t)
        for (const auto &[tau, k] : vecs[t]) {
            auto it = vecs[t + 1].find(tau);
            const std::int64_t up = it == vecs[t + 1].end() ? 0 : it->second;
            CHECK(k <= up);
        }
}

TEST_CASE("q-system difference") {
    const CartanData a1 = cartan_data("A1");
    for (int m = 1; m <= 5; ++m) {
        ClassicalCharacter s = qsystem_difference(a1, 1, m);
        CHECK(s.terms == trivial_character(a1).terms);
        const std::int64_t mid = character_dimension(kr_character(a1, 1, m));
        const std::int64_t up = character_dimension(kr_character(a1, 1, m + 1));
        const std::int64_t dn = character_dimension(kr_character(a1, 1, m - 1));
        CHECK(mid * mid - up * dn == 1);
    }

    const CartanData a2 = cartan_data("A2");
    CHECK(qsystem_difference(a2, 1, 1).terms ==
          irreducible_character(a2, Weight{0, 1}).terms);

    for (const char *name : {"B2", "C2", "G2"}) {
        const CartanData cd = cartan_data(name);
        for (int node = 1; node <= cd.rank; ++node)
            for (int m = 1; m <= 3; ++m) {
                ClassicalCharacter s = qsystem_difference(cd, node, m);
                for (const auto &[tau, k] : decompose(s)) CHECK(k >= 0);
            }
    }
}

TEST_CASE("kernel characters") {
    const CartanData a2 = cartan_data("A2");
    CHECK(kernel_character(a2, 1, P({2, 1}), P({2, 1})).terms.empty());

    // The length-two kernel of (m+1, m-1) <= (m, m) is the Q-system residual.
    for (const char *name : {"A2", "B2", "G2"}) {
        const CartanData cd = cartan_data(name);
        for (int node = 1; node <= cd.rank; ++node)
            for (int m = 2; m <= 3; ++m) {
                ClassicalCharacter lhs =
                    kernel_character(cd, node, P({m, m}), P({m + 1, m - 1}));
                CHECK(lhs.terms == qsystem_difference(cd, node, m).terms);
            }
    }

    CHECK_THROWS_AS(kernel_character(a2, 1, P({3, 1}), P({2, 2})), Error);

    const CartanData a3 = cartan_data("A3");
    ClassicalCharacter k = kernel_character(a3, 2, P({5, 1}), P({6}));
    auto dec = decompose(k);
    CHECK_FALSE(dec.empty());
    for (const auto &[tau, c] : dec) CHECK(c > 0);
}

TEST_CASE("kr tensor factorization search") {
    const CartanData b2 = cartan_data("B2");
    auto self = is_kr_tensor_factorizable(b2, kr_character(b2, 1, 3));
    REQUIRE(self.has_value());
    CHECK(*self == std::vector<std::pair<int, int>>{{1, 3}});

    auto trivial = is_kr_tensor_factorizable(b2, trivial_character(b2));
    REQUIRE(trivial.has_value());
    CHECK(trivial->empty());

    // Every Q-system residual factors into KR characters.
    for (const char *name : {"A1", "A2", "B2", "C2", "G2"}) {
        const CartanData cd = cartan_data(name);
        for (int node = 1; node <= cd.rank; ++node)
            for (int m = 1; m <= 2; ++m) {
                ClassicalCharacter s = qsystem_difference(cd, node, m);
                auto factors = is_kr_tensor_factorizable(cd, s);
                REQUIRE_MESSAGE(factors.has_value(),
                                name << " node " << node << " m " << m);
                ClassicalCharacter prod = trivial_character(cd);
                for (const auto &[fnode, flevel] : *factors)
                    prod = tensor_character(prod, kr_character(cd, fnode, flevel));
                CHECK(prod.terms == s.terms);
            }
    }

    // The interior-node kernel does not factor, and small caps report
    // truncation instead of pretending the answer is "none".
    const CartanData a3 = cartan_data("A3");
    ClassicalCharacter k = kernel_character(a3, 2, P({5, 1}), P({6}));
    CHECK_FALSE(is_kr_tensor_factorizable(a3, k).has_value());
    try {
        is_kr_tensor_factorizable(a3, k, FactorSearchLimits{6, 1});
        FAIL("cap of one candidate must truncate");
    } catch (const Error &e) {
        CHECK(e.code() == errc::search_truncated);
    }
}

TEST_CASE("schur differences") {
    const CartanData a2 = cartan_data("A2");
    const Weight w1{1, 0}, w2{0, 1}, zero{0, 0};

    CHECK(schur_difference(a2, {w1, w2}, {w1, w2}).empty());
    CHECK(schur_difference(a2, {w1, w1}, {Weight{2, 0}, zero}) ==
          std::map<Weight, std::int64_t>{{w2, 1}});
    CHECK_THROWS_AS(schur_difference(a2, {w1, w1}, {w1, w2}), Error);

    // Sampled comparable pairs stay componentwise nonnegative.
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> coord(0, 3);
    int accepted = 0;
    while (accepted < 25) {
        Weight l1{coord(rng), coord(rng)}, l2{coord(rng), coord(rng)};
        Weight total = weight_add(l1, l2);
        Weight m1{coord(rng), coord(rng)};
        if (m1[0] > total[0] || m1[1] > total[1]) continue;
        Weight m2 = weight_sub(total, m1);
        WeightedPartition lower{{l1, l2}}, upper{{m1, m2}};
        if (!weighted_dominance_leq(a2, lower, upper)) continue;
        ++accepted;
        for (const auto &[tau, c] : schur_difference(a2, {m1, m2}, {l1, l2}))
            CHECK_MESSAGE(c >= 0, "lower=(" << to_string(l1) << ")(" << to_string(l2)
                                            << ") upper=(" << to_string(m1) << ")("
                                            << to_string(m2) << ") tau=" << to_string(tau));
    }
}
