#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kr/error.hpp"

namespace kr {

enum class Series : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

// Root-system data of a simple Lie algebra.  The Cartan matrix is stored so
// that entry(i, j) = <alpha_j, alpha_i^vee>; equivalently, column j holds the
// fundamental-weight coordinates of the simple root alpha_j.  root_length[i]
// is the half square length r_i of alpha_i (short roots normalized to 1),
// and diag(r) * C is symmetric.
struct CartanData {
    Series series = Series::A;
    int rank = 0;
    std::vector<int> cartan;       // row-major rank x rank
    std::vector<int> root_length;  // r_i in {1, 2, 3}

    int entry(int i, int j) const { return cartan[static_cast<std::size_t>(i) * rank + j]; }
    std::string name() const;
    bool operator==(const CartanData &) const = default;
};

// Supported: A1..A8, B2..B8, C2..C8, D4..D8, E6..E8, F4, G2.
CartanData cartan_data(Series series, int rank);
CartanData cartan_data(const std::string &name);  // e.g. "B3"

// Integral weight in fundamental-weight coordinates.
using Weight = std::vector<int>;

bool is_dominant(const Weight &w);
Weight zero_weight(const CartanData &cd);
Weight fundamental_weight(const CartanData &cd, int node);  // node is 1-based
Weight simple_root(const CartanData &cd, int node);
Weight weight_add(const Weight &a, const Weight &b);
Weight weight_sub(const Weight &a, const Weight &b);
Weight weight_scaled(const Weight &a, int k);
Weight simple_reflection(const CartanData &cd, int node, const Weight &w);
std::string to_string(const Weight &w);
Weight parse_weight(const std::string &text, int rank);

// True iff nu - mu is a nonnegative integer combination of simple roots.
bool weight_leq(const CartanData &cd, const Weight &mu, const Weight &nu);

// Simple-root coordinates of w when it lies in the root lattice.
std::optional<std::vector<std::int64_t>> root_lattice_coordinates(const CartanData &cd,
                                                                  const Weight &w);

struct PositiveRoot {
    std::vector<int> alpha;   // coordinates on the simple roots
    std::vector<int> coroot;  // coordinates of alpha^vee on the simple coroots
    Weight omega;             // fundamental-weight coordinates
    int length = 1;           // half square length
    int height = 1;           // sum of alpha coordinates
};

// Closure of the simple roots under simple reflections, positive half only,
// sorted by (height, alpha) for deterministic iteration.
const std::vector<PositiveRoot> &positive_roots(const CartanData &cd);

// nu(h_alpha)
std::int64_t coroot_eval(const PositiveRoot &root, const Weight &nu);

// Finite integer-multiplicity function on weights.  Operations of this
// module produce Weyl-symmetric terms; differences of characters are allowed
// and carry signed multiplicities.
struct ClassicalCharacter {
    CartanData algebra;
    std::map<Weight, std::int64_t> terms;  // zero multiplicities never stored
};

ClassicalCharacter trivial_character(const CartanData &cd);
std::int64_t character_dimension(const ClassicalCharacter &c);

// Weyl dimension formula; the independent cross-check for character sizes.
std::int64_t weyl_dimension(const CartanData &cd, const Weight &hw);

// Full weight-multiplicity function of the irreducible V(hw), by the
// Freudenthal recursion from hw downward.
ClassicalCharacter irreducible_character(const CartanData &cd, const Weight &hw);

// Pointwise convolution of term maps.
ClassicalCharacter tensor_character(const ClassicalCharacter &a, const ClassicalCharacter &b);

// a + sign * b
ClassicalCharacter character_sum(const ClassicalCharacter &a, const ClassicalCharacter &b,
                                 std::int64_t sign = 1);

// Expansion of c on irreducible characters: repeatedly strips the maximal
// term (ties broken by the lexicographically largest coordinate vector).
// Accepts virtual characters, in which case coefficients may be negative;
// inputs that are not integer combinations of characters raise
// errc::not_a_character.
std::map<Weight, std::int64_t> decompose(const ClassicalCharacter &c);

}  // namespace kr
