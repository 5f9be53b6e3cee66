#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "kr/partitions.hpp"
#include "kr/qchar.hpp"

namespace kr {

// Tensor product KR(m_1 w_i) x ... x KR(m_k w_i) attached to a partition.
struct KRTensor {
    CartanData algebra;
    int node = 0;
    Partition partition;
};

// tau -> dim Hom(KR tensor, V(tau))
using MultiplicityVector = std::map<Weight, std::int64_t>;

// Classical character of KR(level * w_node): the q-character restricted to
// the underlying simple Lie algebra.  Memoized per (algebra, node, level).
ClassicalCharacter kr_character(const CartanData &cd, int node, int level,
                                std::int64_t term_budget = kDefaultTermBudget);

MultiplicityVector kr_tensor_multiplicities(const KRTensor &t,
                                            std::int64_t term_budget = kDefaultTermBudget);

struct MultViolation {
    Partition lower;
    Partition upper;
    Weight tau;
    std::int64_t lower_mult = 0;
    std::int64_t upper_mult = 0;
};

struct PositivityReport {
    CartanData algebra;
    int node = 0;
    int m = 0;
    bool all_pairs = false;
    std::int64_t pairs_checked = 0;
    std::vector<MultViolation> violations;
};

// For every comparable pair lambda <= mu in P(m) (cover pairs by default,
// every pair in all_pairs mode) checks the componentwise multiplicity
// inequality; counterexamples are collected, never thrown.
PositivityReport verify_positivity(const CartanData &cd, int node, int m,
                                   bool all_pairs = false,
                                   std::int64_t term_budget = kDefaultTermBudget);

// char KR(m w_i)^2 - char KR((m+1) w_i) char KR((m-1) w_i).  Raises
// errc::violation if any irreducible multiplicity comes out negative.
ClassicalCharacter qsystem_difference(const CartanData &cd, int node, int level,
                                      std::int64_t term_budget = kDefaultTermBudget);

// char KR(upper, i) - char KR(lower, i) for lower <= upper in P(m).
ClassicalCharacter kernel_character(const CartanData &cd, int node, const Partition &upper,
                                    const Partition &lower,
                                    std::int64_t term_budget = kDefaultTermBudget);

struct FactorSearchLimits {
    int max_factors = 6;
    std::int64_t max_candidates = 100'000;
};

// Searches every multiset {(node, level)} whose highest weights sum to the
// top weight of c for one whose KR character product equals c exactly.
// Returns the first hit in enumeration order, or nullopt when the search
// space is exhausted; raises errc::search_truncated when a cap is hit first.
std::optional<std::vector<std::pair<int, int>>> is_kr_tensor_factorizable(
    const CartanData &cd, const ClassicalCharacter &c, FactorSearchLimits limits = {},
    std::int64_t term_budget = kDefaultTermBudget);

// decompose(char V(upper.first) char V(upper.second)
//           - char V(lower.first) char V(lower.second)), signed.
std::map<Weight, std::int64_t> schur_difference(const CartanData &cd,
                                                const std::pair<Weight, Weight> &upper,
                                                const std::pair<Weight, Weight> &lower);

}  // namespace kr
