#include "kr/qchar.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>

#include "kr/checked.hpp"
#include "kr/json_io.hpp"

namespace kr {

namespace {

void require_node(const CartanData &cd, int node) {
    if (node < 1 || node > cd.rank)
        raise(errc::precondition, "node index out of range for " + cd.name());
}

void require_same_algebra(const QCharacter &a, const QCharacter &b) {
    if (!(a.algebra == b.algebra))
        raise(errc::mismatch, "q-characters over different algebras: " + a.algebra.name() + " vs " +
                                  b.algebra.name());
}

// Number of A^{-1} steps from hi down to lo, or nullopt when lo is not below
// hi.  Greedy peel: the topmost spectral position of the quotient can only
// be produced by one A monomial, so every step is forced.
std::optional<std::int64_t> a_steps(const CartanData &cd, const YMonomial &lo, const YMonomial &hi) {
    YMonomial q = monomial_power_product(hi, lo, -1);
    if (q.empty()) return 0;
    auto budget = root_lattice_coordinates(cd, classical_weight(cd, q));
    if (!budget) return std::nullopt;
    if (!std::all_of(budget->begin(), budget->end(), [](std::int64_t v) { return v >= 0; }))
        return std::nullopt;
    std::int64_t total = std::accumulate(budget->begin(), budget->end(), static_cast<std::int64_t>(0));
    auto &remaining = *budget;
    while (!q.empty()) {
        const YFactor *top = &q.factors.front();
        for (const YFactor &f : q.factors)
            if (std::tie(f.c, f.node) > std::tie(top->c, top->node)) top = &f;
        if (top->exp < 0) return std::nullopt;
        const int i = top->node;
        if (remaining[i - 1] < top->exp) return std::nullopt;
        remaining[i - 1] -= top->exp;
        q = monomial_power_product(q, a_monomial(cd, i, top->c - cd.root_length[i - 1]), -top->exp);
    }
    return total;
}

// --- packed monomials -------------------------------------------------------
//
// The T-system check multiplies q-characters with millions of term pairs;
// vector-of-struct keys and node-based maps are too slow for that.  Factors
// pack into one 32-bit word (node in bits 24..27, spectral exponent biased
// by 2^15 in bits 8..23, exponent biased by 128 in the low byte) so a
// monomial is a short sorted word string, merged in scratch space and
// accumulated in an open-addressing table backed by a single arena.

using PackedWord = std::uint32_t;

PackedWord pack_factor(const YFactor &f) {
    if (f.node < 1 || f.node > 15 || f.c < -16000 || f.c > 16000 || f.exp < -60 || f.exp > 60)
        raise(errc::overflow, "monomial factor outside the packable range");
    return (static_cast<std::uint32_t>(f.node) << 24) |
           ((static_cast<std::uint32_t>(f.c + 32768) & 0xFFFFu) << 8) |
           (static_cast<std::uint32_t>(f.exp + 128) & 0xFFu);
}

YFactor unpack_factor(PackedWord w) {
    return {static_cast<int>(w >> 24), static_cast<int>((w >> 8) & 0xFFFFu) - 32768,
            static_cast<int>(w & 0xFFu) - 128};
}

std::vector<PackedWord> pack_monomial(const YMonomial &m) {
    std::vector<PackedWord> out;
    out.reserve(m.factors.size());
    for (const YFactor &f : m.factors) out.push_back(pack_factor(f));
    return out;
}

YMonomial unpack_monomial(const PackedWord *words, std::size_t len) {
    YMonomial m;
    m.factors.reserve(len);
    for (std::size_t i = 0; i < len; ++i) m.factors.push_back(unpack_factor(words[i]));
    return m;
}

void merge_packed(const std::vector<PackedWord> &a, const std::vector<PackedWord> &b,
                  std::vector<PackedWord> &out) {
    out.clear();
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const std::uint32_t ka = a[i] >> 8, kb = b[j] >> 8;
        if (ka < kb)
            out.push_back(a[i++]);
        else if (kb < ka)
            out.push_back(b[j++]);
        else {
            const int e = static_cast<int>(a[i] & 0xFFu) + static_cast<int>(b[j] & 0xFFu) - 256;
            if (e != 0) out.push_back((ka << 8) | static_cast<std::uint32_t>(e + 128));
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), a.begin() + i, a.end());
    out.insert(out.end(), b.begin() + j, b.end());
}

bool packed_dominant(const std::vector<PackedWord> &key) {
    return std::all_of(key.begin(), key.end(),
                       [](PackedWord w) { return (w & 0xFFu) >= 128; });
}

std::uint64_t packed_hash(const PackedWord *words, std::size_t len) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= words[i];
        h *= 1099511628211ull;
    }
    return h | 1;  // zero marks an empty slot
}

class PackedTable {
  public:
    explicit PackedTable(std::size_t expected) {
        std::size_t cap = 64;
        while (cap < expected * 2) cap <<= 1;
        slots_.assign(cap, Slot{});
    }

    void add(const std::vector<PackedWord> &key, std::int64_t delta) {
        if (count_ * 4 >= slots_.size() * 3) grow();
        const std::uint64_t h = packed_hash(key.data(), key.size());
        std::size_t idx = h & (slots_.size() - 1);
        while (true) {
            Slot &s = slots_[idx];
            if (s.hash == 0) {
                s.hash = h;
                s.offset = arena_.size();
                s.len = static_cast<std::uint32_t>(key.size());
                s.value = delta;
                arena_.insert(arena_.end(), key.begin(), key.end());
                ++count_;
                return;
            }
            if (s.hash == h && s.len == key.size() &&
                std::equal(key.begin(), key.end(), arena_.begin() + s.offset)) {
                s.value = checked_add(s.value, delta);
                return;
            }
            idx = (idx + 1) & (slots_.size() - 1);
        }
    }

    template <typename F>
    void for_each_nonzero(F &&f) const {
        for (const Slot &s : slots_)
            if (s.hash != 0 && s.value != 0) f(arena_.data() + s.offset, s.len, s.value);
    }

    std::size_t distinct() const { return count_; }

  private:
    struct Slot {
        std::uint64_t hash = 0;
        std::uint64_t offset = 0;
        std::uint32_t len = 0;
        std::int64_t value = 0;
    };

    void grow() {
        std::vector<Slot> bigger(slots_.size() * 2);
        for (const Slot &s : slots_) {
            if (s.hash == 0) continue;
            std::size_t idx = s.hash & (bigger.size() - 1);
            while (bigger[idx].hash != 0) idx = (idx + 1) & (bigger.size() - 1);
            bigger[idx] = s;
        }
        slots_.swap(bigger);
    }

    std::vector<Slot> slots_;
    std::vector<PackedWord> arena_;
    std::size_t count_ = 0;
};

struct PackedChar {
    std::vector<std::vector<PackedWord>> keys;
    std::vector<std::int64_t> mults;
};

PackedChar pack_qcharacter(const QCharacter &qc) {
    PackedChar out;
    out.keys.reserve(qc.terms.size());
    out.mults.reserve(qc.terms.size());
    for (const auto &[m, k] : qc.terms) {
        out.keys.push_back(pack_monomial(m));
        out.mults.push_back(k);
    }
    return out;
}

// Streams a * b into the accumulator with the given sign; dominant products
// are also collected separately when a map is supplied.
void accumulate_product(PackedTable &acc, const PackedChar &a, const PackedChar &b, int sign,
                        std::map<YMonomial, std::int64_t> *dominants) {
    std::vector<PackedWord> scratch;
    scratch.reserve(64);
    for (std::size_t i = 0; i < a.keys.size(); ++i)
        for (std::size_t j = 0; j < b.keys.size(); ++j) {
            merge_packed(a.keys[i], b.keys[j], scratch);
            const std::int64_t value = checked_mul(a.mults[i], b.mults[j]);
            acc.add(scratch, sign > 0 ? value : -value);
            if (dominants != nullptr && packed_dominant(scratch)) {
                YMonomial m = unpack_monomial(scratch.data(), scratch.size());
                (*dominants)[m] = checked_add((*dominants)[m], value);
            }
        }
}

struct Segment {
    int base = 0;
    int len = 0;
};

// Horizontal strips of the histogram {position -> count}: per residue class
// mod step, row k is the maximal run of positions with count >= k.  Any two
// strips are in general position, so a dominant sl_2 monomial with these
// strips is the highest monomial of the product of the strip modules.
std::vector<Segment> histogram_rows(const std::vector<std::pair<int, int>> &positions, int step) {
    std::map<int, std::vector<std::pair<int, int>>> by_residue;
    for (const auto &[c, u] : positions) {
        int res = ((c % step) + step) % step;
        by_residue[res].push_back({c, u});
    }
    std::vector<Segment> out;
    for (auto &[res, pos] : by_residue) {
        std::sort(pos.begin(), pos.end());
        std::vector<int> open_bases;  // row k currently open with base open_bases[k-1]
        int prev_c = 0;
        bool have_prev = false;
        auto close_down_to = [&](int keep, int end_c) {
            while (static_cast<int>(open_bases.size()) > keep) {
                out.push_back({open_bases.back(), (end_c - open_bases.back()) / step + 1});
                open_bases.pop_back();
            }
        };
        for (const auto &[c, u] : pos) {
            if (have_prev && c != prev_c + step)
                close_down_to(0, prev_c);  // gap: every open row ends
            else if (have_prev)
                close_down_to(u, prev_c);  // contiguous: rows above the new count end
            while (static_cast<int>(open_bases.size()) < u) open_bases.push_back(c);
            prev_c = c;
            have_prev = true;
        }
        close_down_to(0, prev_c);
    }
    std::sort(out.begin(), out.end(),
              [](const Segment &a, const Segment &b) { return std::tie(a.base, a.len) < std::tie(b.base, b.len); });
    return out;
}

}  // namespace

bool YMonomial::dominant() const {
    return std::all_of(factors.begin(), factors.end(), [](const YFactor &f) { return f.exp >= 0; });
}

YMonomial y_monomial(std::vector<YFactor> factors) {
    std::sort(factors.begin(), factors.end(),
              [](const YFactor &a, const YFactor &b) { return std::tie(a.node, a.c) < std::tie(b.node, b.c); });
    std::vector<YFactor> merged;
    for (const YFactor &f : factors) {
        if (!merged.empty() && merged.back().node == f.node && merged.back().c == f.c)
            merged.back().exp += f.exp;
        else
            merged.push_back(f);
    }
    std::erase_if(merged, [](const YFactor &f) { return f.exp == 0; });
    return YMonomial{std::move(merged)};
}

YMonomial monomial_product(const YMonomial &a, const YMonomial &b) {
    return monomial_power_product(a, b, 1);
}

YMonomial monomial_power_product(const YMonomial &a, const YMonomial &b, int k) {
    if (k == 0) return a;
    YMonomial out;
    out.factors.reserve(a.factors.size() + b.factors.size());
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        bool take_a;
        if (i >= a.factors.size())
            take_a = false;
        else if (j >= b.factors.size())
            take_a = true;
        else {
            auto ka = std::tie(a.factors[i].node, a.factors[i].c);
            auto kb = std::tie(b.factors[j].node, b.factors[j].c);
            if (ka == kb) {
                int e = a.factors[i].exp + k * b.factors[j].exp;
                if (e != 0) out.factors.push_back({a.factors[i].node, a.factors[i].c, e});
                ++i;
                ++j;
                continue;
            }
            take_a = ka < kb;
        }
        if (take_a) {
            out.factors.push_back(a.factors[i]);
            ++i;
        } else {
            const YFactor &f = b.factors[j];
            out.factors.push_back({f.node, f.c, k * f.exp});
            ++j;
        }
    }
    return out;
}

YMonomial shift_spectral(const YMonomial &m, int delta) {
    YMonomial out = m;
    for (YFactor &f : out.factors) f.c += delta;
    return out;
}

std::string to_string(const YMonomial &m) {
    if (m.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < m.factors.size(); ++i) {
        const YFactor &f = m.factors[i];
        if (i) os << '*';
        os << "Y[" << f.node << ',' << f.c << ']';
        if (f.exp != 1) os << '^' << f.exp;
    }
    return os.str();
}

YMonomial a_monomial(const CartanData &cd, int node, int c) {
    require_node(cd, node);
    const int r = cd.root_length[node - 1];
    std::vector<YFactor> f{{node, c - r, 1}, {node, c + r, 1}};
    for (int j = 1; j <= cd.rank; ++j) {
        if (j == node) continue;
        switch (cd.entry(j - 1, node - 1)) {
            case 0:
                break;
            case -1:
                f.push_back({j, c, -1});
                break;
            case -2:
                f.push_back({j, c - 1, -1});
                f.push_back({j, c + 1, -1});
                break;
            case -3:
                f.push_back({j, c - 2, -1});
                f.push_back({j, c, -1});
                f.push_back({j, c + 2, -1});
                break;
            default:
                raise(errc::precondition, "unexpected Cartan entry in " + cd.name());
        }
    }
    return y_monomial(std::move(f));
}

YMonomial kr_highest_monomial(const CartanData &cd, int node, int level, int c) {
    require_node(cd, node);
    if (level < 0) raise(errc::precondition, "kr_highest_monomial: level must be nonnegative");
    const int r = cd.root_length[node - 1];
    std::vector<YFactor> f;
    for (int t = 0; t < level; ++t) f.push_back({node, c + 2 * r * t, 1});
    return y_monomial(std::move(f));
}

Weight classical_weight(const CartanData &cd, const YMonomial &m) {
    Weight w = zero_weight(cd);
    for (const YFactor &f : m.factors) {
        if (f.node < 1 || f.node > cd.rank)
            raise(errc::precondition, "monomial node out of range for " + cd.name());
        w[static_cast<std::size_t>(f.node - 1)] += f.exp;
    }
    return w;
}

bool monomial_leq(const CartanData &cd, const YMonomial &lo, const YMonomial &hi) {
    return a_steps(cd, lo, hi).has_value();
}

std::size_t YMonomialHash::operator()(const YMonomial &m) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    for (const YFactor &f : m.factors) {
        mix(static_cast<std::uint32_t>(f.node));
        mix(static_cast<std::uint32_t>(f.c));
        mix(static_cast<std::uint32_t>(f.exp));
    }
    return static_cast<std::size_t>(h);
}

QCharacter fm_qcharacter(const CartanData &cd, const YMonomial &highest, std::int64_t term_budget) {
    if (!highest.dominant())
        raise(errc::precondition, "fm_qcharacter: highest monomial " + to_string(highest) +
                                      " is not dominant");
    const int n = cd.rank;

    struct Rec {
        std::int64_t mult = 0;
        int height = 0;
        std::vector<std::int64_t> already;  // copies absorbed into node strings headed above
    };
    std::unordered_map<YMonomial, Rec, YMonomialHash> pool;
    std::map<int, std::vector<const YMonomial *>> buckets;

    auto &head_rec = pool[highest];
    head_rec.mult = 1;
    head_rec.height = 0;
    head_rec.already.assign(n, 0);
    buckets[0].push_back(&pool.find(highest)->first);

    while (!buckets.empty()) {
        auto bucket_it = buckets.begin();
        const int h = bucket_it->first;
        std::vector<const YMonomial *> entries = std::move(bucket_it->second);
        buckets.erase(bucket_it);
        std::sort(entries.begin(), entries.end(),
                  [](const YMonomial *a, const YMonomial *b) { return *a < *b; });

        for (const YMonomial *mkey : entries) {
            const YMonomial m = *mkey;  // pool may rehash below
            const std::int64_t mult = pool[m].mult;
            for (int node = 1; node <= n; ++node) {
                const std::int64_t need = checked_sub(mult, pool[m].already[node - 1]);
                if (need < 0)
                    raise(errc::fm_inconsistency,
                          "string multiplicities exceed term multiplicity at " + to_string(m));
                if (need == 0) continue;

                std::vector<std::pair<int, int>> ipart;
                bool non_dominant = false;
                for (const YFactor &f : m.factors) {
                    if (f.node != node) continue;
                    if (f.exp < 0) non_dominant = true;
                    ipart.push_back({f.c, f.exp});
                }
                if (non_dominant)
                    raise(errc::fm_inconsistency,
                          "monomial " + to_string(m) + " must head a node-" + std::to_string(node) +
                              " string but is not dominant there");
                if (ipart.empty()) continue;  // trivial string

                const int r = cd.root_length[node - 1];
                const int step = 2 * r;
                const std::vector<Segment> segments = histogram_rows(ipart, step);

                // Expand the product of the string characters below the head;
                // every combination of flip depths yields one member.
                auto emit = [&](const YMonomial &member, int dh) {
                    auto [it, fresh] = pool.try_emplace(member);
                    Rec &rec = it->second;
                    if (fresh) {
                        rec.height = h + dh;
                        rec.already.assign(n, 0);
                        if (static_cast<std::int64_t>(pool.size()) > term_budget)
                            raise(errc::budget_exceeded,
                                  "term budget " + std::to_string(term_budget) +
                                      " exceeded while expanding " + to_string(highest));
                        buckets[h + dh].push_back(&it->first);
                    } else if (rec.height != h + dh) {
                        raise(errc::fm_inconsistency,
                              "inconsistent step count reaching " + to_string(member));
                    }
                    rec.already[node - 1] = checked_add(rec.already[node - 1], need);
                    rec.mult = std::max(rec.mult, rec.already[node - 1]);
                };
                auto expand = [&](auto &&self, std::size_t s, const YMonomial &cur, int dh) -> void {
                    if (s == segments.size()) {
                        if (dh > 0) emit(cur, dh);
                        return;
                    }
                    self(self, s + 1, cur, dh);
                    const Segment &seg = segments[s];
                    YMonomial flipped = cur;
                    for (int t = 1; t <= seg.len; ++t) {
                        flipped = monomial_power_product(
                            flipped, a_monomial(cd, node, seg.base + step * (seg.len - t) + r), -1);
                        self(self, s + 1, flipped, dh + t);
                    }
                };
                expand(expand, 0, m, 0);
            }
        }
    }

    QCharacter qc;
    qc.algebra = cd;
    qc.highest = highest;
    qc.terms.reserve(pool.size());
    for (const auto &[m, rec] : pool) qc.terms.emplace(m, rec.mult);
    return qc;
}

QCharacter qchar_product(const QCharacter &a, const QCharacter &b) {
    require_same_algebra(a, b);
    QCharacter out;
    out.algebra = a.algebra;
    out.highest = monomial_product(a.highest, b.highest);
    const QCharacter &small = a.terms.size() <= b.terms.size() ? a : b;
    const QCharacter &large = a.terms.size() <= b.terms.size() ? b : a;
    out.terms.reserve(std::min<std::size_t>(small.terms.size() * large.terms.size(),
                                            large.terms.size() * 8));
    for (const auto &[ms, cs] : small.terms)
        for (const auto &[ml, cl] : large.terms) {
            auto [it, fresh] = out.terms.try_emplace(monomial_product(ms, ml), 0);
            it->second = checked_add(it->second, checked_mul(cs, cl));
        }
    return out;
}

QCharacter shift_spectral(const QCharacter &qc, int delta) {
    QCharacter out;
    out.algebra = qc.algebra;
    out.highest = shift_spectral(qc.highest, delta);
    out.terms.reserve(qc.terms.size());
    for (const auto &[m, c] : qc.terms) out.terms.emplace(shift_spectral(m, delta), c);
    return out;
}

std::map<YMonomial, std::int64_t> dominant_monomials(const QCharacter &qc) {
    std::map<YMonomial, std::int64_t> out;
    for (const auto &[m, c] : qc.terms)
        if (m.dominant()) out.emplace(m, c);
    return out;
}

ClassicalCharacter restrict_classical(const QCharacter &qc) {
    ClassicalCharacter out;
    out.algebra = qc.algebra;
    for (const auto &[m, c] : qc.terms) {
        Weight w = classical_weight(qc.algebra, m);
        std::int64_t &slot = out.terms[w];
        slot = checked_add(slot, c);
        if (slot == 0) out.terms.erase(w);
    }
    return out;
}

std::int64_t qchar_dimension(const QCharacter &qc) {
    std::int64_t d = 0;
    for (const auto &[m, c] : qc.terms) d = checked_add(d, c);
    return d;
}

bool check_istring_closure(const CartanData &cd, const QCharacter &qc) {
    const int n = cd.rank;
    // Re-derive heights from scratch, then rerun the string bookkeeping with
    // the multiplicities fixed.
    std::map<int, std::vector<std::pair<YMonomial, std::int64_t>>> buckets;
    for (const auto &[m, c] : qc.terms) {
        auto steps = a_steps(cd, m, qc.highest);
        if (!steps) return false;
        buckets[static_cast<int>(*steps)].push_back({m, c});
    }
    std::vector<std::unordered_map<YMonomial, std::int64_t, YMonomialHash>> already(n);
    for (auto &[h, entries] : buckets) {
        std::sort(entries.begin(), entries.end());
        for (const auto &[m, mult] : entries) {
            for (int node = 1; node <= n; ++node) {
                auto it = already[node - 1].find(m);
                const std::int64_t absorbed = it == already[node - 1].end() ? 0 : it->second;
                const std::int64_t need = mult - absorbed;
                if (need < 0) return false;
                if (need == 0) continue;
                std::vector<std::pair<int, int>> ipart;
                for (const YFactor &f : m.factors) {
                    if (f.node != node) continue;
                    if (f.exp < 0) return false;
                    ipart.push_back({f.c, f.exp});
                }
                if (ipart.empty()) continue;
                const int r = cd.root_length[node - 1];
                const int step = 2 * r;
                bool ok = true;
                auto expand = [&](auto &&self, std::size_t s, const YMonomial &cur, int dh,
                                  const std::vector<Segment> &segments) -> void {
                    if (!ok) return;
                    if (s == segments.size()) {
                        if (dh == 0) return;
                        if (qc.terms.find(cur) == qc.terms.end()) {
                            ok = false;
                            return;
                        }
                        already[node - 1][cur] += need;
                        return;
                    }
                    self(self, s + 1, cur, dh, segments);
                    const Segment &seg = segments[s];
                    YMonomial flipped = cur;
                    for (int t = 1; t <= seg.len; ++t) {
                        flipped = monomial_power_product(
                            flipped, a_monomial(cd, node, seg.base + step * (seg.len - t) + r), -1);
                        self(self, s + 1, flipped, dh + t, segments);
                    }
                };
                const std::vector<Segment> segments = histogram_rows(ipart, step);
                expand(expand, 0, m, 0, segments);
                if (!ok) return false;
            }
        }
    }
    // Every absorbed count must match an existing term exactly.
    for (int node = 0; node < n; ++node)
        for (const auto &[m, c] : already[node]) {
            auto it = qc.terms.find(m);
            if (it == qc.terms.end() || it->second < c) return false;
        }
    return true;
}

std::vector<KRFactor> kr_segments(const CartanData &cd, const YMonomial &dominant) {
    if (!dominant.dominant())
        raise(errc::precondition, "kr_segments: monomial " + to_string(dominant) + " is not dominant");
    std::vector<KRFactor> out;
    for (int node = 1; node <= cd.rank; ++node) {
        std::vector<std::pair<int, int>> part;
        for (const YFactor &f : dominant.factors)
            if (f.node == node) part.push_back({f.c, f.exp});
        if (part.empty()) continue;
        for (const Segment &seg : histogram_rows(part, 2 * cd.root_length[node - 1]))
            out.push_back({node, seg.len, seg.base});
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// KR q-character cache

namespace {

std::shared_mutex g_cache_mtx;
std::optional<std::string> g_cache_dir;
bool g_cache_dir_set = false;
std::map<std::tuple<char, int, int, int>, std::shared_ptr<const QCharacter>> g_memo;

std::optional<std::string> effective_cache_dir() {
    {
        std::shared_lock lock(g_cache_mtx);
        if (g_cache_dir_set) return g_cache_dir;
    }
    if (const char *env = std::getenv("KR_CACHE_DIR"); env != nullptr && *env != '\0')
        return std::string(env);
    return std::nullopt;
}

std::string cache_path(const std::string &dir, const CartanData &cd, int node, int level) {
    return dir + "/qchar-" + cd.name() + "-n" + std::to_string(node) + "-m" + std::to_string(level) +
           ".json";
}

}  // namespace

void set_qchar_cache_dir(std::optional<std::string> dir) {
    std::unique_lock lock(g_cache_mtx);
    g_cache_dir = std::move(dir);
    g_cache_dir_set = true;
}

std::optional<std::string> qchar_cache_dir() { return effective_cache_dir(); }

void clear_qchar_memo() {
    std::unique_lock lock(g_cache_mtx);
    g_memo.clear();
}

QCharacter kr_qcharacter(const CartanData &cd, int node, int level, int c, std::int64_t term_budget) {
    require_node(cd, node);
    if (level < 0) raise(errc::precondition, "kr_qcharacter: level must be nonnegative");
    const std::tuple<char, int, int, int> key{static_cast<char>(cd.series), cd.rank, node, level};
    std::shared_ptr<const QCharacter> base;
    {
        std::shared_lock lock(g_cache_mtx);
        auto it = g_memo.find(key);
        if (it != g_memo.end()) base = it->second;
    }
    if (!base) {
        const auto dir = effective_cache_dir();
        if (dir) {
            const std::string path = cache_path(*dir, cd, node, level);
            std::ifstream in(path);
            if (in.good()) {
                std::ostringstream buf;
                buf << in.rdbuf();
                base = std::make_shared<const QCharacter>(
                    parse_qchar_json(buf.str(), cd, node, level));
            }
        }
        if (!base) {
            base = std::make_shared<const QCharacter>(
                fm_qcharacter(cd, kr_highest_monomial(cd, node, level, 0), term_budget));
            if (dir) {
                std::error_code ec;
                std::filesystem::create_directories(*dir, ec);
                const std::string path = cache_path(*dir, cd, node, level);
                const std::string tmp = path + ".tmp" + std::to_string(::getpid());
                std::ofstream out(tmp);
                if (out.good()) {
                    out << qchar_json(*base, node, level);
                    out.close();
                    if (out.good())
                        std::rename(tmp.c_str(), path.c_str());  // replace-on-complete
                    else
                        std::remove(tmp.c_str());
                }
            }
        }
        std::unique_lock lock(g_cache_mtx);
        auto [it, inserted] = g_memo.emplace(key, base);
        if (!inserted) base = it->second;
    }
    if (c == 0) return *base;
    return shift_spectral(*base, c);
}

TSystemReport tsystem_verify(const CartanData &cd, int node, int level, int c,
                             std::int64_t term_budget) {
    require_node(cd, node);
    if (level < 1) raise(errc::precondition, "tsystem_verify: level must be positive");
    const int shift = 2 * cd.root_length[node - 1];

    const PackedChar w_m = pack_qcharacter(kr_qcharacter(cd, node, level, c, term_budget));
    const PackedChar w_ms = pack_qcharacter(kr_qcharacter(cd, node, level, c + shift, term_budget));
    const PackedChar w_up = pack_qcharacter(kr_qcharacter(cd, node, level + 1, c, term_budget));
    const PackedChar w_dn =
        pack_qcharacter(kr_qcharacter(cd, node, level - 1, c + shift, term_budget));

    TSystemReport report;
    report.rhs_product_highest =
        monomial_product(kr_highest_monomial(cd, node, level + 1, c),
                         kr_highest_monomial(cd, node, level - 1, c + shift));

    // Signed difference of the two products, accumulated in packed form.
    PackedTable acc(w_m.keys.size() * 8 + 64);
    accumulate_product(acc, w_m, w_ms, +1, &report.lhs_dominants);
    accumulate_product(acc, w_up, w_dn, -1, nullptr);

    bool nonnegative = true;
    std::vector<std::pair<YMonomial, std::int64_t>> s_entries;
    acc.for_each_nonzero([&](const PackedWord *words, std::size_t len, std::int64_t value) {
        if (value < 0) nonnegative = false;
        s_entries.emplace_back(unpack_monomial(words, len), value);
    });
    std::sort(s_entries.begin(), s_entries.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    report.s_term = std::map<YMonomial, std::int64_t>(s_entries.begin(), s_entries.end());

    if (!nonnegative || s_entries.empty()) {
        report.holds = false;
        return report;
    }

    // Highest monomial of the residual: the unique maximal dominant term.
    std::vector<YMonomial> dominants;
    for (const auto &[m, k] : s_entries)
        if (m.dominant()) dominants.push_back(m);
    YMonomial top;
    bool found = false;
    for (const YMonomial &m : dominants) {
        bool maximal = true;
        for (const YMonomial &other : dominants)
            if (!(other == m) && monomial_leq(cd, m, other)) {
                maximal = false;
                break;
            }
        if (maximal) {
            if (found) {
                report.holds = false;  // no unique highest: not a KR tensor product
                return report;
            }
            top = m;
            found = true;
        }
    }
    if (!found) {
        report.holds = false;
        return report;
    }

    report.s_factors = kr_segments(cd, top);
    bool equal = true;
    if (report.s_factors.size() == 1) {
        const KRFactor &f = report.s_factors.front();
        const QCharacter single = kr_qcharacter(cd, f.node, f.level, f.base, term_budget);
        equal = single.terms.size() == s_entries.size();
        if (equal)
            for (const auto &[m, k] : s_entries) {
                auto it = single.terms.find(m);
                if (it == single.terms.end() || it->second != k) {
                    equal = false;
                    break;
                }
            }
    } else {
        QCharacter product;
        product.algebra = cd;
        product.terms.emplace(YMonomial{}, 1);
        for (const KRFactor &f : report.s_factors)
            product = qchar_product(product, kr_qcharacter(cd, f.node, f.level, f.base, term_budget));
        equal = product.terms.size() == s_entries.size();
        if (equal)
            for (const auto &[m, k] : s_entries) {
                auto it = product.terms.find(m);
                if (it == product.terms.end() || it->second != k) {
                    equal = false;
                    break;
                }
            }
    }
    report.holds = equal;
    return report;
}

std::vector<YMonomial> two_factor_dominant_list(const CartanData &cd, int node, int m1, int m2,
                                                std::int64_t term_budget) {
    require_node(cd, node);
    if (!(m1 > m2 + 1) || m2 < 0)
        raise(errc::precondition, "two_factor_dominant_list: need m1 > m2 + 1 >= 1");
    const int r = cd.root_length[node - 1];
    const int base1 = -2 * r * (m1 - m2 - 1);
    const QCharacter prod = qchar_product(kr_qcharacter(cd, node, m1, base1, term_budget),
                                          kr_qcharacter(cd, node, m2, 0, term_budget));

    // The shared highest monomial, written out block by block: the top
    // factor Y_{i, 2 r m2}, the doubled descending block down to c = 0, and
    // the tail of the longer factor below zero.
    std::vector<YFactor> expected;
    expected.push_back({node, 2 * r * m2, 1});
    for (int s = 0; s < m2; ++s) expected.push_back({node, 2 * r * s, 2});
    for (int t = 1; t <= m1 - m2 - 1; ++t) expected.push_back({node, -2 * r * t, 1});
    if (y_monomial(std::move(expected)) != prod.highest)
        raise(errc::violation, "two-factor highest monomial does not match the expected product form");

    std::vector<std::pair<std::int64_t, YMonomial>> ranked;
    for (const auto &[m, k] : dominant_monomials(prod)) {
        auto steps = a_steps(cd, m, prod.highest);
        if (!steps)
            raise(errc::fm_inconsistency, "dominant monomial " + to_string(m) +
                                              " is not below the product highest monomial");
        (void)k;
        ranked.push_back({*steps, m});
    }
    std::sort(ranked.begin(), ranked.end());
    std::vector<YMonomial> out;
    out.reserve(ranked.size());
    for (auto &[steps, m] : ranked) out.push_back(std::move(m));
    return out;
}

}  // namespace kr
