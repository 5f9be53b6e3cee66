#include "kr/liealg.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <shared_mutex>
#include <sstream>

#include "kr/checked.hpp"

namespace kr {

namespace {

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

// Fraction-free Gaussian elimination (Bareiss).  Exact for integer input.
std::int64_t int_determinant(std::vector<std::int64_t> m, int n) {
    if (n == 0) return 1;
    std::int64_t prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m[static_cast<std::size_t>(k) * n + k] == 0) {
            int pivot = -1;
            for (int r = k + 1; r < n; ++r)
                if (m[static_cast<std::size_t>(r) * n + k] != 0) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) return 0;
            for (int c = 0; c < n; ++c)
                std::swap(m[static_cast<std::size_t>(k) * n + c], m[static_cast<std::size_t>(pivot) * n + c]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                std::int64_t v = checked_sub(checked_mul(m[static_cast<std::size_t>(i) * n + j],
                                                         m[static_cast<std::size_t>(k) * n + k]),
                                             checked_mul(m[static_cast<std::size_t>(i) * n + k],
                                                         m[static_cast<std::size_t>(k) * n + j]));
                m[static_cast<std::size_t>(i) * n + j] = v / prev;
            }
        prev = m[static_cast<std::size_t>(k) * n + k];
    }
    return sign * m[static_cast<std::size_t>(n - 1) * n + (n - 1)];
}

// Derived, cached per-algebra data: positive roots, adjugate of the Cartan
// matrix, and a strictly positive integer functional on the root cone.
struct AlgebraAux {
    std::vector<PositiveRoot> roots;
    std::vector<std::int64_t> adjugate;  // adj(C), row-major; C^{-1} = adj / det
    std::int64_t det = 1;
    std::vector<std::int64_t> psi;  // column sums of adj(C); psi . w > 0 on the positive root cone
    Weight rho;
};

std::vector<PositiveRoot> build_positive_roots(const CartanData &cd) {
    const int n = cd.rank;
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> work;
    for (int i = 0; i < n; ++i) {
        std::vector<int> e(n, 0);
        e[i] = 1;
        seen.insert(e);
        work.push_back(e);
    }
    // Reflection closure; 2 * 240 caps the rank <= 8 root counts comfortably.
    std::size_t guard = 0;
    while (!work.empty()) {
        if (++guard > 480u * 8u) raise(errc::precondition, "root closure failed to terminate");
        std::vector<int> c = work.back();
        work.pop_back();
        for (int i = 0; i < n; ++i) {
            std::int64_t pairing = 0;  // <beta, alpha_i^vee>
            for (int j = 0; j < n; ++j) pairing += static_cast<std::int64_t>(cd.entry(i, j)) * c[j];
            std::vector<int> s = c;
            s[i] -= static_cast<int>(pairing);
            if (seen.insert(s).second) work.push_back(s);
        }
    }

    std::vector<PositiveRoot> out;
    for (const auto &c : seen) {
        if (!std::all_of(c.begin(), c.end(), [](int v) { return v >= 0; })) continue;
        PositiveRoot r;
        r.alpha = c;
        r.height = std::accumulate(c.begin(), c.end(), 0);
        r.omega.assign(n, 0);
        for (int i = 0; i < n; ++i) {
            long v = 0;
            for (int j = 0; j < n; ++j) v += static_cast<long>(cd.entry(i, j)) * c[j];
            r.omega[i] = static_cast<int>(v);
        }
        long norm = 0;  // (alpha, alpha) = sum_i c_i r_i omega_i
        for (int i = 0; i < n; ++i) norm += static_cast<long>(c[i]) * cd.root_length[i] * r.omega[i];
        if (norm <= 0 || norm % 2 != 0) raise(errc::precondition, "inconsistent root length");
        r.length = static_cast<int>(norm / 2);
        r.coroot.assign(n, 0);
        for (int i = 0; i < n; ++i) {
            long num = static_cast<long>(c[i]) * cd.root_length[i];
            if (num % r.length != 0) raise(errc::precondition, "non-integral coroot");
            r.coroot[i] = static_cast<int>(num / r.length);
        }
        out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), [](const PositiveRoot &a, const PositiveRoot &b) {
        return std::tie(a.height, a.alpha) < std::tie(b.height, b.alpha);
    });
    return out;
}

const AlgebraAux &aux_for(const CartanData &cd) {
    static std::map<std::pair<char, int>, std::unique_ptr<AlgebraAux>> registry;
    static std::shared_mutex mtx;
    const std::pair<char, int> key{static_cast<char>(cd.series), cd.rank};
    {
        std::shared_lock lock(mtx);
        auto it = registry.find(key);
        if (it != registry.end()) return *it->second;
    }
    auto aux = std::make_unique<AlgebraAux>();
    aux->roots = build_positive_roots(cd);
    const int n = cd.rank;
    std::vector<std::int64_t> m(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i) * n + j] = cd.entry(i, j);
    aux->det = int_determinant(m, n);
    if (aux->det <= 0) raise(errc::precondition, "Cartan matrix must have positive determinant");
    aux->adjugate.assign(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<std::int64_t> minor;
            minor.reserve(static_cast<std::size_t>(n - 1) * (n - 1));
            for (int r = 0; r < n; ++r) {
                if (r == i) continue;
                for (int c = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor.push_back(m[static_cast<std::size_t>(r) * n + c]);
                }
            }
            std::int64_t cof = int_determinant(std::move(minor), n - 1);
            aux->adjugate[static_cast<std::size_t>(j) * n + i] = ((i + j) % 2 == 0) ? cof : -cof;
        }
    aux->psi.assign(n, 0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) aux->psi[j] += aux->adjugate[static_cast<std::size_t>(i) * n + j];
    aux->rho.assign(n, 1);

    std::unique_lock lock(mtx);
    auto [it, inserted] = registry.emplace(key, std::move(aux));
    (void)inserted;
    return *it->second;
}

void require_rank(const CartanData &cd, const Weight &w, const char *what) {
    if (static_cast<int>(w.size()) != cd.rank)
        raise(errc::precondition, std::string(what) + ": weight has wrong rank");
}

void require_node(const CartanData &cd, int node) {
    if (node < 1 || node > cd.rank)
        raise(errc::precondition, "node index out of range for " + cd.name());
}

void require_same_algebra(const ClassicalCharacter &a, const ClassicalCharacter &b) {
    if (!(a.algebra == b.algebra))
        raise(errc::mismatch, "characters over different algebras: " + a.algebra.name() + " vs " +
                                  b.algebra.name());
}

// psi . w, exact; strictly monotone along the root order.
std::int64_t psi_value(const AlgebraAux &aux, const Weight &w) {
    std::int64_t v = 0;
    for (std::size_t j = 0; j < w.size(); ++j) v = checked_add(v, checked_mul(aux.psi[j], w[j]));
    return v;
}

constexpr std::int64_t kDecomposeIterationCap = 1'000'000;

const ClassicalCharacter &irreducible_character_cached(const CartanData &cd, const Weight &hw);

}  // namespace

std::string CartanData::name() const {
    return std::string(1, static_cast<char>(series)) + std::to_string(rank);
}

CartanData cartan_data(Series series, int rank) {
    const auto unsupported = [&] {
        raise(errc::unsupported_algebra, "unsupported algebra " +
                                             std::string(1, static_cast<char>(series)) +
                                             std::to_string(rank));
    };
    CartanData cd;
    cd.series = series;
    cd.rank = rank;
    if (rank < 1 || rank > 8) unsupported();
    cd.root_length.assign(rank, 1);

    // Symmetrized Gram matrix (alpha_i, alpha_j), short roots of norm 2.
    std::vector<int> gram(static_cast<std::size_t>(rank) * rank, 0);
    auto edge = [&](int i, int j, int value) {
        gram[static_cast<std::size_t>(i) * rank + j] = value;
        gram[static_cast<std::size_t>(j) * rank + i] = value;
    };
    switch (series) {
        case Series::A:
            for (int i = 0; i + 1 < rank; ++i) edge(i, i + 1, -1);
            break;
        case Series::B:
            if (rank < 2) unsupported();
            for (int i = 0; i < rank - 1; ++i) cd.root_length[i] = 2;
            for (int i = 0; i + 1 < rank; ++i) edge(i, i + 1, -2);
            break;
        case Series::C:
            if (rank < 2) unsupported();
            cd.root_length[rank - 1] = 2;
            for (int i = 0; i + 2 < rank; ++i) edge(i, i + 1, -1);
            edge(rank - 2, rank - 1, -2);
            break;
        case Series::D:
            if (rank < 4) unsupported();
            for (int i = 0; i + 2 < rank; ++i) edge(i, i + 1, -1);
            edge(rank - 3, rank - 1, -1);
            break;
        case Series::E:
            if (rank < 6 || rank > 8) unsupported();
            // Bourbaki numbering: chain 1-3-4-5-...-n with node 2 attached to 4.
            edge(0, 2, -1);
            edge(1, 3, -1);
            for (int i = 2; i + 1 < rank; ++i) edge(i, i + 1, -1);
            break;
        case Series::F:
            if (rank != 4) unsupported();
            cd.root_length[0] = cd.root_length[1] = 2;
            edge(0, 1, -2);
            edge(1, 2, -2);
            edge(2, 3, -1);
            break;
        case Series::G:
            if (rank != 2) unsupported();
            cd.root_length[1] = 3;
            edge(0, 1, -3);
            break;
        default:
            unsupported();
    }
    cd.cartan.assign(static_cast<std::size_t>(rank) * rank, 0);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) {
            int b = (i == j) ? 2 * cd.root_length[i] : gram[static_cast<std::size_t>(i) * rank + j];
            if (b % cd.root_length[i] != 0) unsupported();
            cd.cartan[static_cast<std::size_t>(i) * rank + j] = b / cd.root_length[i];
        }
    return cd;
}

CartanData cartan_data(const std::string &name) {
    if (name.size() < 2) raise(errc::unsupported_algebra, "unsupported algebra '" + name + "'");
    char s = name[0];
    if (s < 'A' || s > 'G')
        raise(errc::unsupported_algebra, "unsupported algebra '" + name + "'");
    int rank = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
        if (name[i] < '0' || name[i] > '9')
            raise(errc::unsupported_algebra, "unsupported algebra '" + name + "'");
        rank = rank * 10 + (name[i] - '0');
        if (rank > 99) break;
    }
    return cartan_data(static_cast<Series>(s), rank);
}

bool is_dominant(const Weight &w) {
    return std::all_of(w.begin(), w.end(), [](int v) { return v >= 0; });
}

Weight zero_weight(const CartanData &cd) { return Weight(static_cast<std::size_t>(cd.rank), 0); }

Weight fundamental_weight(const CartanData &cd, int node) {
    require_node(cd, node);
    Weight w = zero_weight(cd);
    w[static_cast<std::size_t>(node - 1)] = 1;
    return w;
}

Weight simple_root(const CartanData &cd, int node) {
    require_node(cd, node);
    Weight w(static_cast<std::size_t>(cd.rank));
    for (int i = 0; i < cd.rank; ++i) w[i] = cd.entry(i, node - 1);
    return w;
}

Weight weight_add(const Weight &a, const Weight &b) {
    Weight r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Weight weight_sub(const Weight &a, const Weight &b) {
    Weight r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Weight weight_scaled(const Weight &a, int k) {
    Weight r = a;
    for (auto &v : r) v *= k;
    return r;
}

Weight simple_reflection(const CartanData &cd, int node, const Weight &w) {
    require_node(cd, node);
    require_rank(cd, w, "simple_reflection");
    const int coeff = w[static_cast<std::size_t>(node - 1)];
    Weight r = w;
    for (int i = 0; i < cd.rank; ++i) r[i] -= coeff * cd.entry(i, node - 1);
    return r;
}

std::string to_string(const Weight &w) {
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) os << ',';
        os << w[i];
    }
    return os.str();
}

Weight parse_weight(const std::string &text, int rank) {
    Weight w;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        try {
            w.push_back(std::stoi(item));
        } catch (const std::exception &) {
            raise(errc::precondition, "invalid weight coordinate '" + item + "'");
        }
    }
    if (static_cast<int>(w.size()) != rank)
        raise(errc::precondition, "weight '" + text + "' has wrong rank (expected " +
                                      std::to_string(rank) + " coordinates)");
    return w;
}

bool weight_leq(const CartanData &cd, const Weight &mu, const Weight &nu) {
    require_rank(cd, mu, "weight_leq");
    require_rank(cd, nu, "weight_leq");
    auto coords = root_lattice_coordinates(cd, weight_sub(nu, mu));
    if (!coords) return false;
    return std::all_of(coords->begin(), coords->end(), [](std::int64_t v) { return v >= 0; });
}

std::optional<std::vector<std::int64_t>> root_lattice_coordinates(const CartanData &cd,
                                                                  const Weight &w) {
    require_rank(cd, w, "root_lattice_coordinates");
    const AlgebraAux &aux = aux_for(cd);
    const int n = cd.rank;
    std::vector<std::int64_t> x(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        std::int64_t v = 0;
        for (int j = 0; j < n; ++j)
            v = checked_add(v, checked_mul(aux.adjugate[static_cast<std::size_t>(i) * n + j],
                                           static_cast<std::int64_t>(w[j])));
        if (v % aux.det != 0) return std::nullopt;
        x[i] = v / aux.det;
    }
    return x;
}

const std::vector<PositiveRoot> &positive_roots(const CartanData &cd) { return aux_for(cd).roots; }

std::int64_t coroot_eval(const PositiveRoot &root, const Weight &nu) {
    std::int64_t v = 0;
    for (std::size_t i = 0; i < nu.size(); ++i)
        v = checked_add(v, checked_mul(root.coroot[i], nu[i]));
    return v;
}

ClassicalCharacter trivial_character(const CartanData &cd) {
    ClassicalCharacter c;
    c.algebra = cd;
    c.terms[zero_weight(cd)] = 1;
    return c;
}

std::int64_t character_dimension(const ClassicalCharacter &c) {
    std::int64_t d = 0;
    for (const auto &[w, m] : c.terms) d = checked_add(d, m);
    return d;
}

std::int64_t weyl_dimension(const CartanData &cd, const Weight &hw) {
    require_rank(cd, hw, "weyl_dimension");
    if (!is_dominant(hw)) raise(errc::precondition, "weyl_dimension: weight is not dominant");
    const AlgebraAux &aux = aux_for(cd);
    std::int64_t num = 1, den = 1;
    for (const PositiveRoot &root : aux.roots) {
        // (hw + rho, alpha) and (rho, alpha), both as sum_i c_i r_i w_i.
        std::int64_t a = 0, b = 0;
        for (int i = 0; i < cd.rank; ++i) {
            const std::int64_t weight_factor =
                checked_mul(root.alpha[i], cd.root_length[i]);
            a = checked_add(a, checked_mul(weight_factor, hw[i] + 1));
            b = checked_add(b, weight_factor);
        }
        std::int64_t g = gcd64(a, den);
        a /= g;
        den /= g;
        g = gcd64(b, num);
        b /= g;
        num /= g;
        num = checked_mul(num, a);
        den = checked_mul(den, b);
    }
    if (den == 0 || num % den != 0) raise(errc::precondition, "weyl_dimension: non-integral result");
    return num / den;
}

ClassicalCharacter irreducible_character(const CartanData &cd, const Weight &hw) {
    return irreducible_character_cached(cd, hw);
}

namespace {

ClassicalCharacter freudenthal(const CartanData &cd, const Weight &hw) {
    require_rank(cd, hw, "irreducible_character");
    if (!is_dominant(hw)) raise(errc::precondition, "irreducible_character: weight is not dominant");
    const AlgebraAux &aux = aux_for(cd);
    const int n = cd.rank;

    std::map<Weight, std::int64_t> mult;
    mult[hw] = 1;
    // Candidates are generated level by level by subtracting simple roots;
    // every weight of V(hw) below the top arises this way.
    std::vector<std::pair<Weight, std::vector<int>>> level;  // (weight, alpha coords of hw - weight)
    level.emplace_back(hw, std::vector<int>(n, 0));

    std::vector<Weight> simple_roots;
    for (int i = 0; i < n; ++i) simple_roots.push_back(simple_root(cd, i + 1));

    while (!level.empty()) {
        std::map<Weight, std::vector<int>> next;
        for (const auto &[w, depth] : level) {
            for (int i = 0; i < n; ++i) {
                Weight cand = weight_sub(w, simple_roots[i]);
                auto d = depth;
                ++d[i];
                next.emplace(std::move(cand), std::move(d));
            }
        }
        level.clear();
        for (const auto &[mu, depth] : next) {
            std::int64_t rhs = 0;
            for (const PositiveRoot &root : aux.roots) {
                // k ranges while mu + k alpha can still lie under hw.
                int kmax = 0;
                bool first = true;
                for (int i = 0; i < n; ++i) {
                    if (root.alpha[i] == 0) continue;
                    int q = depth[i] / root.alpha[i];
                    kmax = first ? q : std::min(kmax, q);
                    first = false;
                }
                for (int k = 1; k <= kmax; ++k) {
                    Weight up = mu;
                    for (int i = 0; i < n; ++i) up[i] += k * root.omega[i];
                    auto it = mult.find(up);
                    if (it == mult.end()) continue;
                    // (mu + k alpha, alpha) = sum_i c_i r_i (mu + k alpha)_i
                    std::int64_t pairing = 0;
                    for (int i = 0; i < n; ++i)
                        pairing = checked_add(
                            pairing, checked_mul(checked_mul(root.alpha[i], cd.root_length[i]), up[i]));
                    rhs = checked_add(rhs, checked_mul(it->second, pairing));
                }
            }
            if (rhs == 0) continue;
            // (hw + rho)^2 - (mu + rho)^2 = (hw + mu + 2 rho, hw - mu)
            std::int64_t denom = 0;
            for (int i = 0; i < n; ++i)
                denom = checked_add(denom,
                                    checked_mul(checked_mul(depth[i], cd.root_length[i]),
                                                static_cast<std::int64_t>(hw[i]) + mu[i] + 2));
            if (denom <= 0 || (2 * rhs) % denom != 0)
                raise(errc::precondition, "Freudenthal recursion produced a non-integral multiplicity");
            std::int64_t m = 2 * rhs / denom;
            if (m > 0) {
                mult[mu] = m;
                level.emplace_back(mu, depth);
            }
        }
    }

    ClassicalCharacter c;
    c.algebra = cd;
    c.terms = std::move(mult);
    return c;
}

const ClassicalCharacter &irreducible_character_cached(const CartanData &cd, const Weight &hw) {
    using Key = std::tuple<char, int, Weight>;
    static std::map<Key, std::unique_ptr<ClassicalCharacter>> registry;
    static std::shared_mutex mtx;
    Key key{static_cast<char>(cd.series), cd.rank, hw};
    {
        std::shared_lock lock(mtx);
        auto it = registry.find(key);
        if (it != registry.end()) return *it->second;
    }
    auto value = std::make_unique<ClassicalCharacter>(freudenthal(cd, hw));
    std::unique_lock lock(mtx);
    auto [it, inserted] = registry.emplace(std::move(key), std::move(value));
    (void)inserted;
    return *it->second;
}

}  // namespace

ClassicalCharacter tensor_character(const ClassicalCharacter &a, const ClassicalCharacter &b) {
    require_same_algebra(a, b);
    const auto &small = a.terms.size() <= b.terms.size() ? a : b;
    const auto &large = a.terms.size() <= b.terms.size() ? b : a;
    ClassicalCharacter out;
    out.algebra = a.algebra;
    for (const auto &[ws, ms] : small.terms)
        for (const auto &[wl, ml] : large.terms) {
            Weight w = weight_add(ws, wl);
            std::int64_t &slot = out.terms[w];
            slot = checked_add(slot, checked_mul(ms, ml));
            if (slot == 0) out.terms.erase(w);
        }
    return out;
}

ClassicalCharacter character_sum(const ClassicalCharacter &a, const ClassicalCharacter &b,
                                 std::int64_t sign) {
    require_same_algebra(a, b);
    ClassicalCharacter out = a;
    for (const auto &[w, m] : b.terms) {
        std::int64_t &slot = out.terms[w];
        slot = checked_add(slot, checked_mul(sign, m));
        if (slot == 0) out.terms.erase(w);
    }
    return out;
}

std::map<Weight, std::int64_t> decompose(const ClassicalCharacter &c) {
    const CartanData &cd = c.algebra;
    const AlgebraAux &aux = aux_for(cd);
    std::map<Weight, std::int64_t> work = c.terms;
    std::map<Weight, std::int64_t> out;
    std::int64_t guard = 0;
    while (!work.empty()) {
        if (++guard > kDecomposeIterationCap)
            raise(errc::not_a_character, "decomposition did not terminate; support is not a character");
        // The strip target: lexicographically largest among the terms with
        // maximal psi value.  Such a term is maximal in the root order.
        auto best = work.end();
        std::int64_t best_psi = 0;
        for (auto it = work.begin(); it != work.end(); ++it) {
            std::int64_t p = psi_value(aux, it->first);
            if (best == work.end() || p > best_psi ||
                (p == best_psi && it->first > best->first)) {
                best = it;
                best_psi = p;
            }
        }
        const Weight top = best->first;
        if (!is_dominant(top))
            raise(errc::not_a_character,
                  "maximal term " + to_string(top) + " is not dominant; not a character");
        const std::int64_t coeff = best->second;
        std::int64_t &acc = out[top];
        acc = checked_add(acc, coeff);
        const ClassicalCharacter &irr = irreducible_character_cached(cd, top);
        for (const auto &[w, m] : irr.terms) {
            std::int64_t &slot = work[w];
            slot = checked_sub(slot, checked_mul(coeff, m));
            if (slot == 0) work.erase(w);
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second == 0)
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

}  // namespace kr
