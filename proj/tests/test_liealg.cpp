#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "kr/checked.hpp"
#include "kr/liealg.hpp"
#include "oracles.hpp"

using namespace kr;

namespace {

ClassicalCharacter irr(const CartanData &cd, const Weight &w) {
    return irreducible_character(cd, w);
}

bool simple_reflection_symmetric(const CartanData &cd, const ClassicalCharacter &c) {
    for (int i = 1; i <= cd.rank; ++i)
        for (const auto &[w, m] : c.terms) {
            auto it = c.terms.find(simple_reflection(cd, i, w));
            if (it == c.terms.end() || it->second != m) return false;
        }
    return true;
}

// Random nonnegative combination of irreducibles with small highest weights.
ClassicalCharacter random_character(const CartanData &cd, std::mt19937 &rng, int max_coord,
                                    int pieces) {
    std::uniform_int_distribution<int> coord(0, max_coord);
    std::uniform_int_distribution<int> mult(1, 3);
    ClassicalCharacter out;
    out.algebra = cd;
    std::map<Weight, std::int64_t> wanted;
    for (int p = 0; p < pieces; ++p) {
        Weight hw(cd.rank);
        for (int i = 0; i < cd.rank; ++i) hw[i] = coord(rng);
        wanted[hw] += mult(rng);
    }
    for (const auto &[hw, k] : wanted)
        out = character_sum(out, irr(cd, hw), k);
    return out;
}

}  // namespace

TEST_CASE("cartan data tables") {
    CHECK(cartan_data(Series::A, 1).cartan == std::vector<int>{2});
    CHECK(cartan_data(Series::A, 1).root_length == std::vector<int>{1});

    const CartanData a2 = cartan_data("A2");
    CHECK(a2.cartan == std::vector<int>{2, -1, -1, 2});
    CHECK(a2.root_length == std::vector<int>{1, 1});

    const CartanData g2 = cartan_data("G2");
    CHECK(std::count(g2.cartan.begin(), g2.cartan.end(), -3) == 1);
    CHECK(std::set<int>(g2.root_length.begin(), g2.root_length.end()) == std::set<int>{1, 3});

    // diag(r) * C symmetric and positive determinant, for every supported type.
    for (const char *name : {"A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D4", "E6", "F4", "G2"}) {
        const CartanData cd = cartan_data(name);
        for (int i = 0; i < cd.rank; ++i) {
            CHECK(cd.entry(i, i) == 2);
            for (int j = 0; j < cd.rank; ++j) {
                if (i != j) {
                    CHECK(cd.entry(i, j) <= 0);
                    CHECK(cd.entry(i, j) >= -3);
                    CHECK((cd.entry(i, j) == 0) == (cd.entry(j, i) == 0));
                }
                CHECK(cd.root_length[i] * cd.entry(i, j) == cd.root_length[j] * cd.entry(j, i));
            }
        }
        CHECK(positive_roots(cd).size() >= static_cast<std::size_t>(cd.rank));
    }

    CHECK_THROWS_AS(cartan_data(Series::G, 3), Error);
    CHECK_THROWS_AS(cartan_data("D3"), Error);
    CHECK_THROWS_AS(cartan_data("H4"), Error);
    CHECK_THROWS_AS(cartan_data("B1"), Error);
}

TEST_CASE("positive roots") {
    CHECK(positive_roots(cartan_data("A1")).size() == 1);
    CHECK(positive_roots(cartan_data("A2")).size() == 3);
    CHECK(positive_roots(cartan_data("A3")).size() == 6);
    CHECK(positive_roots(cartan_data("B2")).size() == 4);
    CHECK(positive_roots(cartan_data("B3")).size() == 9);
    CHECK(positive_roots(cartan_data("C3")).size() == 9);
    CHECK(positive_roots(cartan_data("D4")).size() == 12);
    CHECK(positive_roots(cartan_data("G2")).size() == 6);
    CHECK(positive_roots(cartan_data("F4")).size() == 24);

    // Coroot coordinates are integral and evaluate fundamental weights to
    // nonnegative integers.
    for (const char *name : {"B3", "C3", "G2", "F4"}) {
        const CartanData cd = cartan_data(name);
        for (const PositiveRoot &r : positive_roots(cd)) {
            CHECK((r.length == 1 || r.length == 2 || r.length == 3));
            for (int i = 1; i <= cd.rank; ++i)
                CHECK(coroot_eval(r, fundamental_weight(cd, i)) >= 0);
        }
    }
}

TEST_CASE("weyl dimension") {
    const CartanData a1 = cartan_data("A1");
    for (int m = 0; m <= 10; ++m) CHECK(weyl_dimension(a1, Weight{m}) == m + 1);

    const CartanData a2 = cartan_data("A2");
    CHECK(weyl_dimension(a2, Weight{1, 0}) == 3);
    CHECK(weyl_dimension(a2, Weight{1, 1}) == 8);
    CHECK(weyl_dimension(a2, Weight{2, 1}) == 15);

    const CartanData a3 = cartan_data("A3");
    CHECK(weyl_dimension(a3, Weight{0, 1, 0}) == 6);
    CHECK(weyl_dimension(a3, Weight{1, 0, 1}) == 15);

    const CartanData b2 = cartan_data("B2");
    CHECK(weyl_dimension(b2, Weight{1, 0}) == 5);
    CHECK(weyl_dimension(b2, Weight{0, 1}) == 4);
    CHECK(weyl_dimension(b2, Weight{0, 2}) == 10);

    const CartanData c2 = cartan_data("C2");
    CHECK(weyl_dimension(c2, Weight{1, 0}) == 4);
    CHECK(weyl_dimension(c2, Weight{0, 1}) == 5);

    const CartanData b3 = cartan_data("B3");
    CHECK(weyl_dimension(b3, Weight{1, 0, 0}) == 7);
    CHECK(weyl_dimension(b3, Weight{0, 1, 0}) == 21);
    CHECK(weyl_dimension(b3, Weight{0, 0, 1}) == 8);

    const CartanData g2 = cartan_data("G2");
    CHECK(weyl_dimension(g2, Weight{1, 0}) == 7);
    CHECK(weyl_dimension(g2, Weight{0, 1}) == 14);

    CHECK_THROWS_AS(weyl_dimension(a2, Weight{-1, 0}), Error);
    CHECK(weyl_dimension(a2, Weight{0, 0}) == 1);
}

TEST_CASE("irreducible characters by Freudenthal") {
    const CartanData a1 = cartan_data("A1");
    ClassicalCharacter v2 = irr(a1, Weight{2});
    CHECK(v2.terms == std::map<Weight, std::int64_t>{{Weight{2}, 1}, {Weight{0}, 1}, {Weight{-2}, 1}});

    const CartanData a2 = cartan_data("A2");
    ClassicalCharacter adj = irr(a2, Weight{1, 1});
    CHECK(adj.terms.at(Weight{0, 0}) == 2);
    CHECK(character_dimension(adj) == 8);

    ClassicalCharacter triv = irr(a2, Weight{0, 0});
    CHECK(triv.terms == std::map<Weight, std::int64_t>{{Weight{0, 0}, 1}});

    for (const char *name : {"A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2"}) {
        const CartanData cd = cartan_data(name);
        for (int i = 1; i <= cd.rank; ++i) {
            Weight hw = fundamental_weight(cd, i);
            ClassicalCharacter c = irr(cd, hw);
            CHECK(character_dimension(c) == weyl_dimension(cd, hw));
            CHECK(simple_reflection_symmetric(cd, c));
        }
        Weight rho(cd.rank, 1);
        ClassicalCharacter c = irr(cd, rho);
        CHECK(character_dimension(c) == weyl_dimension(cd, rho));
        CHECK(simple_reflection_symmetric(cd, c));
    }

    // Larger spot checks against the dimension formula.
    const CartanData g2 = cartan_data("G2");
    CHECK(character_dimension(irr(g2, Weight{3, 0})) == weyl_dimension(g2, Weight{3, 0}));
    CHECK(character_dimension(irr(g2, Weight{0, 2})) == weyl_dimension(g2, Weight{0, 2}));
    const CartanData b3 = cartan_data("B3");
    CHECK(character_dimension(irr(b3, Weight{0, 2, 0})) == weyl_dimension(b3, Weight{0, 2, 0}));

    // Random dominant weights, dimension against the closed formula.
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> coord(0, 2);
    for (const char *name : {"A3", "A4", "B3", "C3", "D4", "G2"}) {
        const CartanData cd = cartan_data(name);
        for (int trial = 0; trial < 3; ++trial) {
            Weight hw(cd.rank);
            for (int i = 0; i < cd.rank; ++i) hw[i] = coord(rng);
            ClassicalCharacter c = irr(cd, hw);
            CHECK(character_dimension(c) == weyl_dimension(cd, hw));
            CHECK(simple_reflection_symmetric(cd, c));
        }
    }
}

TEST_CASE("tensor products") {
    const CartanData a1 = cartan_data("A1");
    ClassicalCharacter v1 = irr(a1, Weight{1});

    ClassicalCharacter unit = tensor_character(trivial_character(a1), v1);
    CHECK(unit.terms == v1.terms);

    ClassicalCharacter sq = tensor_character(v1, v1);
    CHECK(sq.terms ==
          std::map<Weight, std::int64_t>{{Weight{2}, 1}, {Weight{0}, 2}, {Weight{-2}, 1}});

    auto dec = decompose(tensor_character(irr(a1, Weight{2}), irr(a1, Weight{3})));
    CHECK(dec == std::map<Weight, std::int64_t>{{Weight{5}, 1}, {Weight{3}, 1}, {Weight{1}, 1}});

    const CartanData a2 = cartan_data("A2");
    CHECK_THROWS_AS(tensor_character(v1, trivial_character(a2)), Error);
}

TEST_CASE("decompose") {
    const CartanData a1 = cartan_data("A1");
    const CartanData a2 = cartan_data("A2");

    CHECK(decompose(irr(a2, Weight{2, 1})) == std::map<Weight, std::int64_t>{{Weight{2, 1}, 1}});

    auto cg = decompose(tensor_character(irr(a1, Weight{1}), irr(a1, Weight{1})));
    CHECK(cg == std::map<Weight, std::int64_t>{{Weight{2}, 1}, {Weight{0}, 1}});

    auto mixed = decompose(tensor_character(irr(a2, Weight{1, 0}), irr(a2, Weight{0, 1})));
    CHECK(mixed == std::map<Weight, std::int64_t>{{Weight{1, 1}, 1}, {Weight{0, 0}, 1}});

    // Virtual characters come back with signed coefficients.
    ClassicalCharacter diff = character_sum(irr(a2, Weight{1, 1}), irr(a2, Weight{0, 0}), -2);
    auto signed_dec = decompose(diff);
    CHECK(signed_dec == std::map<Weight, std::int64_t>{{Weight{1, 1}, 1}, {Weight{0, 0}, -2}});

    // A bare non-symmetric term map is rejected.
    ClassicalCharacter junk;
    junk.algebra = a2;
    junk.terms[Weight{1, 0}] = 1;
    junk.terms[Weight{0, -1}] = 1;
    CHECK_THROWS_AS(decompose(junk), Error);
}

TEST_CASE("decompose agrees with the Littlewood-Richardson rule") {
    std::mt19937 rng(20240817);
    for (const char *name : {"A2", "A3"}) {
        const CartanData cd = cartan_data(name);
        std::uniform_int_distribution<int> coord(0, 2);
        for (int trial = 0; trial < 12; ++trial) {
            Weight lam(cd.rank), mu(cd.rank);
            for (int i = 0; i < cd.rank; ++i) {
                lam[i] = coord(rng);
                mu[i] = coord(rng);
            }
            auto got = decompose(tensor_character(irr(cd, lam), irr(cd, mu)));
            auto expected_gl =
                oracles::lr_product(oracles::gl_partition(lam), oracles::gl_partition(mu), cd.rank + 1);
            std::map<Weight, std::int64_t> expected;
            for (const auto &[nu, c] : expected_gl)
                expected[oracles::sl_weight(nu, cd.rank)] += c;
            CHECK(got == expected);
        }
    }
}

TEST_CASE("character ring properties") {
    std::mt19937 rng(7);
    for (const char *name : {"A2", "B2"}) {
        const CartanData cd = cartan_data(name);
        for (int trial = 0; trial < 4; ++trial) {
            ClassicalCharacter a = random_character(cd, rng, 2, 2);
            ClassicalCharacter b = random_character(cd, rng, 2, 2);
            ClassicalCharacter c = random_character(cd, rng, 1, 2);
            CHECK(tensor_character(a, b).terms == tensor_character(b, a).terms);
            CHECK(tensor_character(tensor_character(a, b), c).terms ==
                  tensor_character(a, tensor_character(b, c)).terms);
            CHECK(character_dimension(tensor_character(a, b)) ==
                  character_dimension(a) * character_dimension(b));
        }
    }
}

TEST_CASE("decompose inverts synthesis") {
    std::mt19937 rng(99);
    for (const char *name : {"A2", "C2"}) {
        const CartanData cd = cartan_data(name);
        std::uniform_int_distribution<int> coord(0, 2);
        std::uniform_int_distribution<int> mult(1, 4);
        for (int trial = 0; trial < 6; ++trial) {
            std::map<Weight, std::int64_t> wanted;
            for (int p = 0; p < 3; ++p) {
                Weight hw(cd.rank);
                for (int i = 0; i < cd.rank; ++i) hw[i] = coord(rng);
                wanted[hw] += mult(rng);
            }
            ClassicalCharacter c;
            c.algebra = cd;
            for (const auto &[hw, k] : wanted) c = character_sum(c, irr(cd, hw), k);
            CHECK(decompose(c) == wanted);
        }
    }
}

TEST_CASE("weight order and reflections") {
    const CartanData a2 = cartan_data("A2");
    CHECK(weight_leq(a2, Weight{0, 0}, Weight{1, 1}));           // adjoint top vs zero
    CHECK_FALSE(weight_leq(a2, Weight{1, 0}, Weight{0, 1}));     // different coset
    CHECK(weight_leq(a2, Weight{-1, -1}, Weight{1, 1}));
    CHECK(simple_reflection(a2, 1, Weight{1, 0}) == Weight{-1, 1});
    CHECK(simple_reflection(a2, 1, simple_reflection(a2, 1, Weight{2, 5})) == Weight{2, 5});

    // alpha_i in the fundamental basis is column i of the Cartan matrix.
    CHECK(simple_root(a2, 1) == Weight{2, -1});
    const CartanData b2 = cartan_data("B2");
    CHECK(simple_root(b2, 1) == Weight{2, -2});
    CHECK(simple_root(b2, 2) == Weight{-1, 2});
}

TEST_CASE("overflow is detected") {
    CHECK_THROWS_AS(checked_mul(INT64_MAX / 2, 3), Error);
    CHECK_THROWS_AS(checked_add(INT64_MAX, 1), Error);
    CHECK(checked_mul(1'000'000'000, 4) == 4'000'000'000);

    // A weight far outside the desk scale overflows the dimension formula
    // rather than wrapping around.
    const CartanData a4 = cartan_data("A4");
    CHECK_THROWS_AS(weyl_dimension(a4, Weight{100000, 100000, 100000, 100000}), Error);
}
