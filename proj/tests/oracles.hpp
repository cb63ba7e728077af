#ifndef MORSEDYN_TESTS_ORACLES_HPP
#define MORSEDYN_TESTS_ORACLES_HPP

// Brute-force reference implementations used by both the unit tests and the
// acceptance suite. Everything here favors obviousness over speed and shares
// no code with the library algorithms it checks.

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "helpers.hpp"
#include "morsedyn/complex.hpp"
#include "morsedyn/convexity.hpp"
#include "morsedyn/models.hpp"
#include "morsedyn/nerve.hpp"
#include "morsedyn/persistence.hpp"

namespace mdyn::testing {

// --- Morse decomposition oracle ---------------------------------------------

struct OracleDecomp {
    std::vector<std::vector<int>> sets;       // sorted vertex lists
    std::vector<std::pair<int, int>> order;   // (i, j): sets[i] > sets[j]
};

// Floyd-Warshall reachability, mutual-reachability classes, keep classes
// carrying an edge, order classes by reachability.
inline OracleDecomp scc_oracle(int n, const std::vector<std::vector<uint8_t>>& adj) {
    std::vector<std::vector<uint8_t>> reach = adj;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (reach[i][k])
                for (int j = 0; j < n; ++j)
                    if (reach[k][j]) reach[i][j] = 1;
    std::vector<int> cls(n, -1);
    int nc = 0;
    for (int i = 0; i < n; ++i) {
        if (cls[i] >= 0) continue;
        cls[i] = nc;
        for (int j = i + 1; j < n; ++j)
            if (reach[i][j] && reach[j][i]) cls[j] = nc;
        ++nc;
    }
    OracleDecomp out;
    std::vector<int> keep(nc, -1);
    for (int c = 0; c < nc; ++c) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (cls[i] == c) members.push_back(i);
        bool cyclic = false;
        for (int u : members)
            for (int v : members) cyclic |= adj[u][v] != 0;
        if (!cyclic) continue;
        keep[c] = static_cast<int>(out.sets.size());
        out.sets.push_back(members);
    }
    for (int c = 0; c < nc; ++c)
        for (int d = 0; d < nc; ++d) {
            if (c == d || keep[c] < 0 || keep[d] < 0) continue;
            if (reach[out.sets[static_cast<size_t>(keep[c])][0]]
                     [out.sets[static_cast<size_t>(keep[d])][0]])
                out.order.emplace_back(keep[c], keep[d]);
        }
    return out;
}

// Checks one MorseDecomposition against the oracle; throws on mismatch.
inline void compare_with_scc_oracle(const MorseDecomposition& md, int n,
                                    const std::vector<std::vector<uint8_t>>& adj) {
    auto oracle = scc_oracle(n, adj);
    if (md.sets.size() != oracle.sets.size())
        throw std::runtime_error("morse set count differs from oracle");
    std::vector<int> match(md.sets.size(), -1);
    for (size_t i = 0; i < md.sets.size(); ++i) {
        std::vector<int> mem;
        md.sets[i].for_each([&](SimplexId s) { mem.push_back(static_cast<int>(s)); });
        auto it = std::find(oracle.sets.begin(), oracle.sets.end(), mem);
        if (it == oracle.sets.end()) throw std::runtime_error("morse set absent from oracle");
        match[i] = static_cast<int>(it - oracle.sets.begin());
    }
    for (size_t i = 0; i < md.sets.size(); ++i)
        for (size_t j = 0; j < md.sets.size(); ++j) {
            if (i == j) continue;
            bool expect = std::find(oracle.order.begin(), oracle.order.end(),
                                    std::make_pair(match[i], match[j])) !=
                          oracle.order.end();
            if (md.greater(static_cast<int>(i), static_cast<int>(j)) != expect)
                throw std::runtime_error("morse order differs from oracle");
        }
}

// --- co oracle ---------------------------------------------------------------

// Random small planar complex (at most 12 simplices) drawn from a few
// geometric families with randomized integer coordinates.
inline SimplicialComplex random_small_complex(std::mt19937_64& g) {
    auto coord = [&](int lo, int hi) {
        return Rat(lo + static_cast<int>(g() % static_cast<uint64_t>(hi - lo + 1)));
    };
    while (true) {
        switch (g() % 4) {
            case 0: {  // single triangle: 7 simplices
                Pt a{coord(-3, 3), coord(-3, 3)}, b{coord(-3, 3), coord(-3, 3)},
                    c{coord(-3, 3), coord(-3, 3)};
                if (orient(a, b, c) != 0)
                    return SimplicialComplex::build({a, b, c}, {{0, 1, 2}});
                break;
            }
            case 1: {  // two triangles sharing an edge: 11 simplices
                Pt a{coord(-3, 3), coord(-3, 3)}, b{coord(-3, 3), coord(-3, 3)};
                Pt c{coord(-3, 3), coord(-3, 3)}, d{coord(-3, 3), coord(-3, 3)};
                if (orient(a, b, c) > 0 && orient(a, b, d) < 0)
                    return SimplicialComplex::build({a, b, c, d}, {{0, 1, 2}, {0, 1, 3}});
                break;
            }
            case 2: {  // collinear 1-D path, 2 edges: 5 simplices
                Rat y = coord(-2, 2);
                return SimplicialComplex::build({{0, y}, {1, y}, {3, y}}, {{0, 1}, {1, 2}});
            }
            default: {  // bent 1-D path or triangle outline: 5-7 simplices
                Pt a{coord(-3, 3), coord(-3, 3)}, b{coord(-3, 3), coord(-3, 3)},
                    c{coord(-3, 3), coord(-3, 3)};
                if (a == b || b == c || a == c) break;
                if (on_segment(a, b, c) || on_segment(b, c, a) || on_segment(a, c, b))
                    break;
                if (g() & 1) return SimplicialComplex::build({a, b, c}, {{0, 1}, {1, 2}});
                return SimplicialComplex::build({a, b, c}, {{0, 1}, {1, 2}, {0, 2}});
            }
        }
    }
}

// All convex solid subsets of K (exponential enumeration; K must be small).
inline std::vector<SimplexSet> all_convex_subsets(const SimplicialComplex& K) {
    size_t n = K.size();
    if (n > 16) throw std::runtime_error("complex too large for exhaustive enumeration");
    std::vector<SimplexSet> out;
    for (uint64_t mask = 1; mask < (uint64_t(1) << n); ++mask) {
        SimplexSet c(n);
        for (size_t i = 0; i < n; ++i)
            if (mask & (uint64_t(1) << i)) c.insert(static_cast<SimplexId>(i));
        if (solid_is_convex(K, c)) out.push_back(c);
    }
    return out;
}

// Intersection of every convex solid superset of A, or nullopt when no
// convex superset exists inside K.
inline std::optional<SimplexSet> co_oracle(const SimplicialComplex& K,
                                           const std::vector<SimplexSet>& convex_subsets,
                                           const SimplexSet& A) {
    std::optional<SimplexSet> acc;
    for (const auto& c : convex_subsets) {
        if (!A.subset_of(c)) continue;
        if (!acc)
            acc = c;
        else
            *acc &= c;
    }
    return acc;
}

// --- homology oracle ----------------------------------------------------------

// Plain Gaussian elimination on a row-major dense bit matrix.
inline size_t naive_rank(std::vector<std::vector<uint8_t>> rows) {
    size_t rank = 0;
    size_t ncols = rows.empty() ? 0 : rows[0].size();
    for (size_t c = 0; c < ncols && rank < rows.size(); ++c) {
        size_t pivot = rank;
        while (pivot < rows.size() && !rows[pivot][c]) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (size_t r = 0; r < rows.size(); ++r)
            if (r != rank && rows[r][c])
                for (size_t k = 0; k < ncols; ++k) rows[r][k] ^= rows[rank][k];
        ++rank;
    }
    return rank;
}

// Naive Betti numbers of the (relative) complex of A over B directly from
// the simplicial structure: b_k = n_k - rank d_k - rank d_{k+1}.
inline std::vector<size_t> naive_betti(const SimplicialComplex& K, const SimplexSet& A,
                                       const SimplexSet& B) {
    std::vector<std::vector<SimplexId>> cells(static_cast<size_t>(K.dim()) + 1);
    std::vector<int> pos(K.size(), -1);
    A.for_each([&](SimplexId s) {
        if (B.contains(s)) return;
        pos[s] = static_cast<int>(cells[static_cast<size_t>(K.dim(s))].size());
        cells[static_cast<size_t>(K.dim(s))].push_back(s);
    });
    int top = K.dim();
    while (top >= 0 && cells[static_cast<size_t>(top)].empty()) --top;
    std::vector<size_t> ranks(static_cast<size_t>(top) + 2, 0);  // rank of d_k
    for (int k = 1; k <= top; ++k) {
        const auto& rows_src = cells[static_cast<size_t>(k)];
        const auto& cols_src = cells[static_cast<size_t>(k - 1)];
        std::vector<std::vector<uint8_t>> m(rows_src.size(),
                                            std::vector<uint8_t>(cols_src.size(), 0));
        for (size_t r = 0; r < rows_src.size(); ++r)
            for (SimplexId f : K.facets(rows_src[r]))
                if (pos[f] >= 0) m[r][static_cast<size_t>(pos[f])] ^= 1;
        ranks[static_cast<size_t>(k)] = naive_rank(std::move(m));
    }
    std::vector<size_t> b;
    for (int k = 0; k <= top; ++k)
        b.push_back(cells[static_cast<size_t>(k)].size() - ranks[static_cast<size_t>(k)] -
                    ranks[static_cast<size_t>(k) + 1]);
    return b;
}

// Random abstract complex with at most `max_simplices` simplices total.
inline SimplicialComplex random_complex(std::mt19937_64& g, size_t max_simplices) {
    while (true) {
        int nv = 3 + static_cast<int>(g() % 8);  // 3..10 vertices
        int nt = 1 + static_cast<int>(g() % 12);
        std::set<std::vector<int>> tops;
        for (int i = 0; i < nt; ++i) {
            int sz = 1 + static_cast<int>(g() % 4);  // up to tetrahedra
            std::set<int> vs;
            while (static_cast<int>(vs.size()) < sz)
                vs.insert(static_cast<int>(g() % static_cast<uint64_t>(nv)));
            tops.insert(std::vector<int>(vs.begin(), vs.end()));
        }
        std::vector<std::vector<int>> keep;
        for (const auto& t : tops) {
            bool maximal = true;
            for (const auto& u : tops)
                if (t != u && std::includes(u.begin(), u.end(), t.begin(), t.end()))
                    maximal = false;
            if (maximal) keep.push_back(t);
        }
        auto K = SimplicialComplex::build({}, keep, nv);
        if (K.size() <= max_simplices) return K;
    }
}

inline SimplexSet random_closed_set(const SimplicialComplex& K, std::mt19937_64& g,
                                    int denom) {
    SimplexSet s(K.size());
    for (SimplexId i = 0; i < K.size(); ++i)
        if (g() % static_cast<uint64_t>(denom) == 0) s.insert(i);
    return closure(K, s);
}

// --- zigzag oracle ------------------------------------------------------------

inline size_t mask_rank(std::vector<uint64_t> v) {
    size_t r = 0;
    for (size_t bit = 0; bit < 64; ++bit) {
        size_t p = r;
        while (p < v.size() && !(v[p] & (uint64_t(1) << bit))) ++p;
        if (p == v.size()) continue;
        std::swap(v[r], v[p]);
        for (size_t k = 0; k < v.size(); ++k)
            if (k != r && (v[k] & (uint64_t(1) << bit))) v[k] ^= v[r];
        if (++r == v.size()) break;
    }
    return r;
}

inline uint64_t apply_mat(const MatZ2& a, uint64_t v) {
    uint64_t out = 0;
    for (size_t c = 0; c < a.cols; ++c)
        if (v & (uint64_t(1) << c))
            for (size_t r = 0; r < a.rows; ++r)
                if (a.col[c][r]) out ^= uint64_t(1) << r;
    return out;
}

// Exhaustive generalized rank of the restriction of m to steps [i, j]
// (1-based): enumerate the limit of the restricted diagram as explicit
// tuples, map it into the colimit (direct sum modulo arrow relations), and
// count independent images. Total dimension must stay tiny.
inline size_t oracle_generalized_rank(const PersistenceModule& m, int i, int j) {
    int lo = i - 1, hi = j - 1;
    int k = hi - lo + 1;
    std::vector<size_t> d(m.dims.begin() + lo, m.dims.begin() + hi + 1);
    std::vector<size_t> off(static_cast<size_t>(k) + 1, 0);
    for (int t = 0; t < k; ++t)
        off[static_cast<size_t>(t) + 1] = off[static_cast<size_t>(t)] + d[static_cast<size_t>(t)];
    size_t total = off[static_cast<size_t>(k)];
    if (total > 20) throw std::runtime_error("module too large for exhaustive oracle");

    std::vector<uint64_t> lim_vectors;
    std::vector<uint64_t> card(static_cast<size_t>(k));
    uint64_t prod = 1;
    for (int t = 0; t < k; ++t) {
        card[static_cast<size_t>(t)] = uint64_t(1) << d[static_cast<size_t>(t)];
        prod *= card[static_cast<size_t>(t)];
    }
    for (uint64_t code = 0; code < prod; ++code) {
        std::vector<uint64_t> v(static_cast<size_t>(k));
        uint64_t c = code;
        for (int t = 0; t < k; ++t) {
            v[static_cast<size_t>(t)] = c % card[static_cast<size_t>(t)];
            c /= card[static_cast<size_t>(t)];
        }
        bool ok = true;
        for (int t = 0; t + 1 < k && ok; ++t) {
            const MatZ2& a = m.arrows[static_cast<size_t>(lo + t)];
            if (m.forward[static_cast<size_t>(lo + t)])
                ok = apply_mat(a, v[static_cast<size_t>(t)]) == v[static_cast<size_t>(t) + 1];
            else
                ok = apply_mat(a, v[static_cast<size_t>(t) + 1]) == v[static_cast<size_t>(t)];
        }
        if (!ok) continue;
        uint64_t flat = 0;
        for (int t = 0; t < k; ++t) flat |= v[static_cast<size_t>(t)] << off[static_cast<size_t>(t)];
        lim_vectors.push_back(flat);
    }

    std::vector<uint64_t> rel;
    for (int t = 0; t + 1 < k; ++t) {
        const MatZ2& a = m.arrows[static_cast<size_t>(lo + t)];
        size_t src = m.forward[static_cast<size_t>(lo + t)] ? static_cast<size_t>(t)
                                                            : static_cast<size_t>(t) + 1;
        size_t dst = m.forward[static_cast<size_t>(lo + t)] ? static_cast<size_t>(t) + 1
                                                            : static_cast<size_t>(t);
        for (size_t b = 0; b < d[src]; ++b) {
            uint64_t e = uint64_t(1) << b;
            rel.push_back((e << off[src]) ^ (apply_mat(a, e) << off[dst]));
        }
    }

    std::vector<uint64_t> img = rel;
    for (uint64_t flat : lim_vectors) img.push_back(flat & ((uint64_t(1) << d[0]) - 1));
    return mask_rank(img) - mask_rank(rel);
}

inline std::vector<Interval> oracle_decompose(const PersistenceModule& m) {
    int n = static_cast<int>(m.length());
    auto rank_of = [&](int b, int d) -> long {
        if (b < 1 || d > n || b > d) return 0;
        return static_cast<long>(oracle_generalized_rank(m, b, d));
    };
    std::vector<Interval> out;
    for (int b = 1; b <= n; ++b)
        for (int d = b; d <= n; ++d) {
            long mult = rank_of(b, d) - rank_of(b - 1, d) - rank_of(b, d + 1) +
                        rank_of(b - 1, d + 1);
            if (mult < 0) throw std::runtime_error("negative interval multiplicity");
            for (long t = 0; t < mult; ++t) out.push_back({b, d});
        }
    return out;
}

inline std::vector<Interval> sorted_intervals(std::vector<Interval> v) {
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
        return a.birth != b.birth ? a.birth < b.birth : a.death < b.death;
    });
    return v;
}

inline PersistenceModule random_module(std::mt19937_64& g, size_t max_total) {
    PersistenceModule m;
    size_t n = 1 + g() % 4;
    size_t total = 0;
    for (size_t i = 0; i < n; ++i) {
        size_t d = g() % 3;  // 0..2 per space
        if (total + d > max_total) d = max_total - total;
        total += d;
        m.dims.push_back(d);
    }
    for (size_t i = 0; i + 1 < n; ++i) {
        uint8_t fwd = static_cast<uint8_t>(g() & 1);
        size_t src = fwd ? m.dims[i] : m.dims[i + 1];
        size_t dst = fwd ? m.dims[i + 1] : m.dims[i];
        MatZ2 a = MatZ2::zero(dst, src);
        for (size_t c = 0; c < src; ++c)
            for (size_t r = 0; r < dst; ++r) a.col[c][r] = static_cast<uint8_t>(g() & 1);
        m.arrows.push_back(std::move(a));
        m.forward.push_back(fwd);
    }
    m.validate();
    return m;
}

// --- disconnecting topology checker --------------------------------------------

// Verifies the Thm-style properties of the disconnecting topology for one
// family of disjoint nonempty sets over K; throws with a description on the
// first violation. See test_nerve.cpp for the itemized meaning.
inline void check_disconnecting_topology(const SimplicialComplex& K,
                                         const std::vector<SimplexSet>& sets) {
    auto tb = tm_basis(K, sets);
    size_t n = tb.elements.size();
    if (n == 0 || n > 64) throw std::runtime_error("basis size out of range");

    std::vector<uint64_t> setmask(sets.size(), 0);
    for (size_t i = 0; i < n; ++i)
        setmask[static_cast<size_t>(tb.label[i])] |= uint64_t(1) << i;

    std::vector<uint64_t> min_nbhd(n, n == 64 ? ~uint64_t(0) : (uint64_t(1) << n) - 1);
    for (size_t i = 0; i < n; ++i)
        for (uint64_t b : tb.sets)
            if (b & (uint64_t(1) << i)) min_nbhd[i] &= b;

    // (i) T0.
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (min_nbhd[i] == min_nbhd[j]) throw std::runtime_error("topology is not T0");

    // (ii) induced-topology agreement.
    for (size_t i = 0; i < n; ++i) {
        auto star = upper_set(K, tb.elements[i]);
        uint64_t trace = 0;
        for (size_t j = 0; j < n; ++j)
            if (tb.label[j] == tb.label[i] && star.contains(tb.elements[j]))
                trace |= uint64_t(1) << j;
        if (min_nbhd[i] != trace)
            throw std::runtime_error("induced topologies disagree");
        if (!tb_open(tb, min_nbhd[i]))
            throw std::runtime_error("minimal neighborhood not open");
    }

    // (iii) disconnection.
    for (uint64_t m : setmask)
        if (!tb_open(tb, m)) throw std::runtime_error("family member not open");

    // Basis intersection axiom.
    for (uint64_t a : tb.sets)
        for (uint64_t b : tb.sets)
            if ((a & b) && !tb_open(tb, a & b))
                throw std::runtime_error("basis not intersection-closed");

    // (iv) components equal the sets when every set is order-connected.
    bool all_connected = true;
    for (const auto& s : sets) all_connected &= order_components(K, s).size() == 1;
    if (all_connected) {
        auto comps = tb_components(tb);
        std::set<uint64_t> expect(setmask.begin(), setmask.end());
        std::set<uint64_t> got(comps.begin(), comps.end());
        if (expect != got) throw std::runtime_error("components differ from family");
    }
}

}  // namespace mdyn::testing

#endif
