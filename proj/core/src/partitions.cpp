#include "kr/partitions.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "kr/checked.hpp"

namespace kr {

namespace {

void require_same_total(const Partition &a, const Partition &b) {
    if (a.total() != b.total())
        raise(errc::mismatch, "partitions of different totals: " + to_string(a) + " vs " + to_string(b));
}

// Unit moves p - e_i + e_j (i < j) on the zero-padded parts that stay weakly
// decreasing.  Covers are always of this shape, so candidates generated here
// are a superset of the covers of p.  Each candidate records its move.
std::vector<std::pair<std::pair<int, int>, Partition>> unit_moves(const Partition &p) {
    std::vector<int> padded = p.parts;
    padded.push_back(0);
    const int k = static_cast<int>(padded.size());
    std::vector<std::pair<std::pair<int, int>, Partition>> out;
    std::set<Partition> seen;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            std::vector<int> q = padded;
            q[i] -= 1;
            q[j] += 1;
            bool ok = q[i] >= 0;
            for (int t = 0; ok && t + 1 < k; ++t) ok = q[t] >= q[t + 1];
            if (!ok) continue;
            while (!q.empty() && q.back() == 0) q.pop_back();
            Partition cand{std::move(q)};
            if (seen.insert(cand).second) out.push_back({{i, j}, std::move(cand)});
        }
    return out;
}

}  // namespace

int Partition::total() const { return std::accumulate(parts.begin(), parts.end(), 0); }

Partition make_partition(std::vector<int> parts) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] <= 0) raise(errc::precondition, "partition parts must be strictly positive");
        if (i > 0 && parts[i] > parts[i - 1])
            raise(errc::precondition, "partition parts must be weakly decreasing");
    }
    return Partition{std::move(parts)};
}

Partition parse_partition(const std::string &text) {
    std::vector<int> parts;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        try {
            parts.push_back(std::stoi(item));
        } catch (const std::exception &) {
            raise(errc::precondition, "invalid partition part '" + item + "'");
        }
    }
    if (parts.empty()) raise(errc::precondition, "empty partition");
    return make_partition(std::move(parts));
}

std::string to_string(const Partition &p) {
    std::ostringstream os;
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
        if (i) os << ',';
        os << p.parts[i];
    }
    return os.str();
}

std::vector<Partition> partitions_of(int m, std::optional<int> length) {
    if (m < 1) raise(errc::precondition, "partitions_of: m must be positive");
    if (length && *length < 1) raise(errc::precondition, "partitions_of: length must be positive");
    std::vector<Partition> out;
    std::vector<int> cur;
    // Descending lexicographic enumeration.
    auto rec = [&](auto &&self, int remaining, int cap) -> void {
        if (remaining == 0) {
            if (!length || static_cast<int>(cur.size()) == *length) out.push_back(Partition{cur});
            return;
        }
        if (length && static_cast<int>(cur.size()) >= *length) return;
        if (length && remaining < *length - static_cast<int>(cur.size())) return;
        const int hi = std::min(cap, remaining);
        for (int v = hi; v >= 1; --v) {
            cur.push_back(v);
            self(self, remaining - v, v);
            cur.pop_back();
        }
    };
    rec(rec, m, m);
    return out;
}

bool reverse_dominance_leq(const Partition &lo, const Partition &hi) {
    require_same_total(lo, hi);
    const int k = std::min(lo.length(), hi.length());
    long a = 0, b = 0;
    for (int j = 0; j < k; ++j) {
        a += lo.parts[j];
        b += hi.parts[j];
        if (a < b) return false;
    }
    return true;
}

std::vector<Partition> covers(const Partition &p) {
    auto cands = unit_moves(p);
    std::vector<Partition> out;
    for (const auto &[mv, cand] : cands) {
        bool is_cover = true;
        for (const auto &[mv2, other] : cands) {
            if (other == cand) continue;
            if (reverse_dominance_leq(other, cand)) {
                is_cover = false;
                break;
            }
        }
        if (is_cover) out.push_back(cand);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<Partition, Partition>> cover_edges(int m) {
    std::vector<std::pair<Partition, Partition>> out;
    for (const Partition &p : partitions_of(m))
        for (const Partition &q : covers(p)) out.emplace_back(p, q);
    return out;
}

std::vector<Partition> cover_chain(const Partition &lo, const Partition &hi) {
    if (!reverse_dominance_leq(lo, hi))
        raise(errc::incomparable,
              "partitions are not comparable: " + to_string(lo) + " vs " + to_string(hi));
    std::vector<Partition> chain{lo};
    Partition cur = lo;
    while (!(cur == hi)) {
        // Among covers of cur that stay below hi, take the one produced by the
        // lexicographically smallest unit move.
        auto cands = unit_moves(cur);
        std::vector<Partition> cur_covers = covers(cur);
        const Partition *next = nullptr;
        for (const auto &[mv, cand] : cands) {
            if (!std::binary_search(cur_covers.begin(), cur_covers.end(), cand)) continue;
            if (!reverse_dominance_leq(cand, hi)) continue;
            next = &cand;
            break;  // unit_moves enumerates moves in (i, j) order
        }
        if (next == nullptr)
            raise(errc::incomparable, "no admissible cover step from " + to_string(cur));
        chain.push_back(*next);
        cur = *next;
    }
    return chain;
}

std::pair<Partition, Partition> extremal(int m, std::optional<int> length) {
    if (m < 1) raise(errc::precondition, "extremal: m must be positive");
    if (!length) {
        Partition min{std::vector<int>{m}};
        Partition max{std::vector<int>(static_cast<std::size_t>(m), 1)};
        return {min, max};
    }
    const int k = *length;
    if (k < 1 || k > m) raise(errc::precondition, "extremal: need 1 <= k <= m");
    // Maximum of P(m, k): m = l k + p gives (l+1 repeated p times, l repeated k-p times).
    const int l = m / k;
    const int p = m % k;
    std::vector<int> max_parts;
    max_parts.insert(max_parts.end(), p, l + 1);
    max_parts.insert(max_parts.end(), k - p, l);
    // Minimum of P(m, k): everything piled on the first part.
    std::vector<int> min_parts{m - k + 1};
    min_parts.insert(min_parts.end(), k - 1, 1);
    return {Partition{std::move(min_parts)}, Partition{std::move(max_parts)}};
}

std::string poset_dot(int m) {
    std::ostringstream os;
    os << "digraph P" << m << " {\n";
    os << "  rankdir=BT;\n";
    for (const Partition &p : partitions_of(m)) os << "  \"" << to_string(p) << "\";\n";
    for (const auto &[lower, upper] : cover_edges(m))
        os << "  \"" << to_string(lower) << "\" -> \"" << to_string(upper) << "\";\n";
    os << "}\n";
    return os.str();
}

bool weighted_dominance_leq(const CartanData &cd, const WeightedPartition &lo, const WeightedPartition &hi) {
    Weight sum_lo = zero_weight(cd);
    Weight sum_hi = zero_weight(cd);
    for (const Weight &w : lo.parts) {
        if (static_cast<int>(w.size()) != cd.rank || !is_dominant(w))
            raise(errc::precondition, "weighted_dominance_leq: parts must be dominant weights of " + cd.name());
        sum_lo = weight_add(sum_lo, w);
    }
    for (const Weight &w : hi.parts) {
        if (static_cast<int>(w.size()) != cd.rank || !is_dominant(w))
            raise(errc::precondition, "weighted_dominance_leq: parts must be dominant weights of " + cd.name());
        sum_hi = weight_add(sum_hi, w);
    }
    if (sum_lo != sum_hi)
        raise(errc::mismatch, "weighted_dominance_leq: parts sum to different weights");

    const std::size_t len = std::max(lo.parts.size(), hi.parts.size());
    for (const PositiveRoot &root : positive_roots(cd)) {
        std::vector<std::int64_t> a, b;  // evaluations on h_alpha, zero padded
        a.reserve(len);
        b.reserve(len);
        for (const Weight &w : lo.parts) a.push_back(coroot_eval(root, w));
        for (const Weight &w : hi.parts) b.push_back(coroot_eval(root, w));
        a.resize(len, 0);
        b.resize(len, 0);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        // min over l-subsets of the sum = sum of the l smallest values
        std::int64_t pa = 0, pb = 0;
        for (std::size_t l = 0; l < len; ++l) {
            pa += a[l];
            pb += b[l];
            if (pa > pb) return false;
        }
    }
    return true;
}

}  // namespace kr
