#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kr/liealg.hpp"

namespace kr {

// One variable Y_{node, c} raised to exp.  Spectral parameters live on the
// integer lattice a = q^c.  Nodes are 1-based throughout.
struct YFactor {
    int node = 0;
    int c = 0;
    int exp = 0;
    auto operator<=>(const YFactor &) const = default;
};

// Laurent monomial in the Y variables, kept canonical: factors sorted by
// (node, c), no zero exponents.
struct YMonomial {
    std::vector<YFactor> factors;

    bool empty() const { return factors.empty(); }
    bool dominant() const;
    auto operator<=>(const YMonomial &) const = default;
};

YMonomial y_monomial(std::vector<YFactor> factors);  // canonicalizes
YMonomial monomial_product(const YMonomial &a, const YMonomial &b);
// a * b^k (k may be negative)
YMonomial monomial_power_product(const YMonomial &a, const YMonomial &b, int k);
YMonomial shift_spectral(const YMonomial &m, int delta);
std::string to_string(const YMonomial &m);

// The monomial A_{node, c}: the simple-root analogue in the monomial order.
YMonomial a_monomial(const CartanData &cd, int node, int c);

// Y_{i,c} Y_{i,c+2r_i} ... Y_{i,c+2r_i(level-1)}; level 0 gives the empty
// monomial.
YMonomial kr_highest_monomial(const CartanData &cd, int node, int level, int c);

// Projection u_{i,c} -> sum_c u_{i,c} omega_i.
Weight classical_weight(const CartanData &cd, const YMonomial &m);

// lo <= hi iff hi * lo^{-1} is a product of A monomials with nonnegative
// exponents; decided by an exact greedy peel of the quotient.
bool monomial_leq(const CartanData &cd, const YMonomial &lo, const YMonomial &hi);

struct YMonomialHash {
    std::size_t operator()(const YMonomial &m) const noexcept;
};

inline constexpr std::int64_t kDefaultTermBudget = 1'000'000;

struct QCharacter {
    CartanData algebra;
    YMonomial highest;
    std::unordered_map<YMonomial, std::int64_t, YMonomialHash> terms;
};

// Monomial completion from the highest monomial: for each node, terms not
// yet absorbed into a completed sl_2 string must head their own string and
// get expanded by the sl_2 rule.  Valid when the target q-character has a
// unique dominant monomial (the Kirillov-Reshetikhin case).
QCharacter fm_qcharacter(const CartanData &cd, const YMonomial &highest,
                         std::int64_t term_budget = kDefaultTermBudget);

// q-character of W^{(node)}_{level, q^c}.  Results are memoized per
// (algebra, node, level) at base c = 0 and shifted on demand; when a cache
// directory is configured they are also persisted as JSON.
QCharacter kr_qcharacter(const CartanData &cd, int node, int level, int c = 0,
                         std::int64_t term_budget = kDefaultTermBudget);

QCharacter qchar_product(const QCharacter &a, const QCharacter &b);
QCharacter shift_spectral(const QCharacter &qc, int delta);
std::map<YMonomial, std::int64_t> dominant_monomials(const QCharacter &qc);
ClassicalCharacter restrict_classical(const QCharacter &qc);
std::int64_t qchar_dimension(const QCharacter &qc);

// Diagnostic: re-derives the per-node string structure from the raw term
// list and checks that every string closes with consistent multiplicities.
bool check_istring_closure(const CartanData &cd, const QCharacter &qc);

struct KRFactor {
    int node = 0;
    int level = 0;
    int base = 0;
    auto operator<=>(const KRFactor &) const = default;
};

// Splits a dominant monomial into maximal arithmetic strings per node, each
// the highest monomial of a KR module.
std::vector<KRFactor> kr_segments(const CartanData &cd, const YMonomial &dominant);

struct TSystemReport {
    std::map<YMonomial, std::int64_t> lhs_dominants;
    YMonomial rhs_product_highest;
    std::map<YMonomial, std::int64_t> s_term;
    std::vector<KRFactor> s_factors;
    bool holds = false;
};

// Checks W_{m,c} W_{m,c+2r} = W_{m+1,c} W_{m-1,c+2r} + S as an exact multiset
// identity, extracting S as the signed difference and verifying it is the
// product of the KR q-characters read off its highest monomial.
TSystemReport tsystem_verify(const CartanData &cd, int node, int level, int c = 0,
                             std::int64_t term_budget = kDefaultTermBudget);

// Dominant monomials of W^{(i)}_{m1, -2r(m1-m2-1)} x W^{(i)}_{m2, 0} for
// m1 > m2 + 1, sorted descending in the monomial order.
std::vector<YMonomial> two_factor_dominant_list(const CartanData &cd, int node, int m1, int m2,
                                                std::int64_t term_budget = kDefaultTermBudget);

// File-backed cache configuration.  When unset, the KR_CACHE_DIR environment
// variable is consulted; q-characters are always memoized in-process.
void set_qchar_cache_dir(std::optional<std::string> dir);
std::optional<std::string> qchar_cache_dir();
void clear_qchar_memo();

}  // namespace kr
