#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kr/liealg.hpp"

namespace kr {

// Weakly decreasing list of strictly positive integers.
struct Partition {
    std::vector<int> parts;

    int total() const;
    int length() const { return static_cast<int>(parts.size()); }
    auto operator<=>(const Partition &) const = default;
};

Partition make_partition(std::vector<int> parts);       // validates shape
Partition parse_partition(const std::string &text);     // "5,1"
std::string to_string(const Partition &p);

// All partitions of m (of exact length when given), in descending
// lexicographic order.
std::vector<Partition> partitions_of(int m, std::optional<int> length = std::nullopt);

// lo <= hi in the reverse dominance order: every prefix sum of lo is >= the
// corresponding prefix sum of hi, up to the shorter length.
bool reverse_dominance_leq(const Partition &lo, const Partition &hi);

// All partitions covering p, i.e. the transitive reduction edges out of p.
std::vector<Partition> covers(const Partition &p);

// Edges of the cover relation on all of P(m), as (lower, upper) pairs.
std::vector<std::pair<Partition, Partition>> cover_edges(int m);

// Saturated chain lo = nu_0 < nu_1 < ... < nu_l = hi where each step is a
// cover; deterministic (smallest (i, j) move among the admissible covers).
std::vector<Partition> cover_chain(const Partition &lo, const Partition &hi);

// (minimum, maximum) of P(m), or of P(m, k) when a length is given.
std::pair<Partition, Partition> extremal(int m, std::optional<int> length = std::nullopt);

// DOT rendering of the cover relation on P(m).
std::string poset_dot(int m);

// Partition of a dominant weight into dominant summands (zeros allowed).
struct WeightedPartition {
    std::vector<Weight> parts;
};

// Generalized order on partitions of a dominant weight: for every positive
// root alpha and every l >= 1 (up to the zero-padded common length), the
// minimal sum of l parts evaluated on h_alpha on the left is bounded by the
// one on the right.
bool weighted_dominance_leq(const CartanData &cd, const WeightedPartition &lo, const WeightedPartition &hi);

}  // namespace kr
