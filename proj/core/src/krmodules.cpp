#include "kr/krmodules.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>

#include "kr/checked.hpp"

namespace kr {

namespace {

void require_node(const CartanData &cd, int node) {
    if (node < 1 || node > cd.rank)
        raise(errc::precondition, "node index out of range for " + cd.name());
}

const ClassicalCharacter &kr_character_cached(const CartanData &cd, int node, int level,
                                              std::int64_t term_budget) {
    using Key = std::tuple<char, int, int, int>;
    static std::map<Key, std::unique_ptr<ClassicalCharacter>> registry;
    static std::shared_mutex mtx;
    Key key{static_cast<char>(cd.series), cd.rank, node, level};
    {
        std::shared_lock lock(mtx);
        auto it = registry.find(key);
        if (it != registry.end()) return *it->second;
    }
    auto value = std::make_unique<ClassicalCharacter>(
        restrict_classical(kr_qcharacter(cd, node, level, 0, term_budget)));
    std::unique_lock lock(mtx);
    auto [it, inserted] = registry.emplace(std::move(key), std::move(value));
    (void)inserted;
    return *it->second;
}

ClassicalCharacter kr_tensor_character(const CartanData &cd, int node, const Partition &p,
                                       std::int64_t term_budget) {
    ClassicalCharacter out = trivial_character(cd);
    for (int part : p.parts)
        out = tensor_character(out, kr_character_cached(cd, node, part, term_budget));
    return out;
}

}  // namespace

ClassicalCharacter kr_character(const CartanData &cd, int node, int level,
                                std::int64_t term_budget) {
    require_node(cd, node);
    if (level < 0) raise(errc::precondition, "kr_character: level must be nonnegative");
    return kr_character_cached(cd, node, level, term_budget);
}

MultiplicityVector kr_tensor_multiplicities(const KRTensor &t, std::int64_t term_budget) {
    require_node(t.algebra, t.node);
    return decompose(kr_tensor_character(t.algebra, t.node, t.partition, term_budget));
}

PositivityReport verify_positivity(const CartanData &cd, int node, int m, bool all_pairs,
                                   std::int64_t term_budget) {
    require_node(cd, node);
    if (m < 1) raise(errc::precondition, "verify_positivity: m must be positive");

    PositivityReport report;
    report.algebra = cd;
    report.node = node;
    report.m = m;
    report.all_pairs = all_pairs;

    std::map<Partition, MultiplicityVector> mults;
    for (const Partition &p : partitions_of(m))
        mults.emplace(p, kr_tensor_multiplicities(KRTensor{cd, node, p}, term_budget));

    std::vector<std::pair<const Partition *, const Partition *>> pairs;
    if (all_pairs) {
        for (const auto &[lo, vlo] : mults)
            for (const auto &[hi, vhi] : mults) {
                if (lo == hi) continue;
                if (reverse_dominance_leq(lo, hi)) pairs.push_back({&lo, &hi});
            }
    } else {
        for (const auto &[lo, vlo] : mults)
            for (const Partition &hi : covers(lo)) pairs.push_back({&lo, &mults.find(hi)->first});
    }

    for (const auto &[lo, hi] : pairs) {
        ++report.pairs_checked;
        const MultiplicityVector &vlo = mults[*lo];
        const MultiplicityVector &vhi = mults[*hi];
        for (const auto &[tau, c_lo] : vlo) {
            auto it = vhi.find(tau);
            const std::int64_t c_hi = it == vhi.end() ? 0 : it->second;
            if (c_lo > c_hi)
                report.violations.push_back({*lo, *hi, tau, c_lo, c_hi});
        }
        // Multiplicities present upstairs but not downstairs are fine.
    }
    return report;
}

ClassicalCharacter qsystem_difference(const CartanData &cd, int node, int level,
                                      std::int64_t term_budget) {
    require_node(cd, node);
    if (level < 1) raise(errc::precondition, "qsystem_difference: level must be positive");
    const ClassicalCharacter &mid = kr_character_cached(cd, node, level, term_budget);
    ClassicalCharacter square = tensor_character(mid, mid);
    ClassicalCharacter cross =
        tensor_character(kr_character_cached(cd, node, level + 1, term_budget),
                         kr_character_cached(cd, node, level - 1, term_budget));
    ClassicalCharacter diff = character_sum(square, cross, -1);
    for (const auto &[tau, c] : decompose(diff))
        if (c < 0)
            raise(errc::violation, "Q-system violation at " + cd.name() + " node " +
                                       std::to_string(node) + " level " + std::to_string(level) +
                                       ": multiplicity of " + to_string(tau) + " is " +
                                       std::to_string(c));
    return diff;
}

ClassicalCharacter kernel_character(const CartanData &cd, int node, const Partition &upper,
                                    const Partition &lower, std::int64_t term_budget) {
    require_node(cd, node);
    if (!reverse_dominance_leq(lower, upper))
        raise(errc::incomparable, "kernel_character: " + to_string(lower) +
                                      " is not below " + to_string(upper));
    return character_sum(kr_tensor_character(cd, node, upper, term_budget),
                         kr_tensor_character(cd, node, lower, term_budget), -1);
}

std::optional<std::vector<std::pair<int, int>>> is_kr_tensor_factorizable(
    const CartanData &cd, const ClassicalCharacter &c, FactorSearchLimits limits,
    std::int64_t term_budget) {
    if (!(c.algebra == cd)) raise(errc::mismatch, "character belongs to a different algebra");
    if (c.terms.empty()) raise(errc::precondition, "cannot factor the zero character");

    // Locate the unique maximal weight of the support.
    Weight top = c.terms.begin()->first;
    for (const auto &[w, k] : c.terms)
        if (weight_leq(cd, top, w)) top = w;
    for (const auto &[w, k] : c.terms)
        if (!weight_leq(cd, w, top))
            raise(errc::precondition, "character has no unique maximal weight");
    if (!is_dominant(top)) raise(errc::precondition, "maximal weight is not dominant");

    const std::int64_t dim = character_dimension(c);
    if (std::all_of(top.begin(), top.end(), [](int v) { return v == 0; }))
        return std::vector<std::pair<int, int>>{};  // trivial character: empty product

    // Per node, the levels at that node form a partition of the coordinate.
    std::vector<int> active;
    std::vector<std::vector<Partition>> choices;
    for (int i = 0; i < cd.rank; ++i) {
        if (top[i] == 0) continue;
        active.push_back(i + 1);
        choices.push_back(partitions_of(top[i]));
    }

    std::vector<std::size_t> odo(active.size(), 0);
    std::int64_t candidates = 0;
    while (true) {
        std::vector<std::pair<int, int>> factors;
        for (std::size_t s = 0; s < active.size(); ++s)
            for (int part : choices[s][odo[s]].parts) factors.push_back({active[s], part});

        if (static_cast<int>(factors.size()) <= limits.max_factors) {
            if (++candidates > limits.max_candidates)
                raise(errc::search_truncated, "factor search truncated after " +
                                                  std::to_string(limits.max_candidates) +
                                                  " candidates");
            std::int64_t prod_dim = 1;
            for (const auto &[node, level] : factors)
                prod_dim = checked_mul(
                    prod_dim, character_dimension(kr_character_cached(cd, node, level, term_budget)));
            if (prod_dim == dim) {
                ClassicalCharacter prod = trivial_character(cd);
                for (const auto &[node, level] : factors)
                    prod = tensor_character(prod, kr_character_cached(cd, node, level, term_budget));
                if (prod.terms == c.terms) return factors;
            }
        }

        std::size_t s = 0;
        for (; s < odo.size(); ++s) {
            if (++odo[s] < choices[s].size()) break;
            odo[s] = 0;
        }
        if (s == odo.size()) break;
    }
    return std::nullopt;
}

std::map<Weight, std::int64_t> schur_difference(const CartanData &cd,
                                                const std::pair<Weight, Weight> &upper,
                                                const std::pair<Weight, Weight> &lower) {
    for (const Weight *w : {&upper.first, &upper.second, &lower.first, &lower.second})
        if (static_cast<int>(w->size()) != cd.rank || !is_dominant(*w))
            raise(errc::precondition, "schur_difference: weights must be dominant for " + cd.name());
    if (weight_add(upper.first, upper.second) != weight_add(lower.first, lower.second))
        raise(errc::mismatch, "schur_difference: pairs have different total weights");
    ClassicalCharacter a = tensor_character(irreducible_character(cd, upper.first),
                                            irreducible_character(cd, upper.second));
    ClassicalCharacter b = tensor_character(irreducible_character(cd, lower.first),
                                            irreducible_character(cd, lower.second));
    return decompose(character_sum(a, b, -1));
}

}  // namespace kr
