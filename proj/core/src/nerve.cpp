#include "morsedyn/nerve.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

namespace mdyn {

int OrderComplex::find_chain(const std::vector<int>& verts) const {
    // Chains are stored sorted by (set, dim, lex); binary search on the key.
    auto key = [this](size_t c) { return chains[c]; };
    size_t lo = 0, hi = chains.size();
    if (verts.empty()) return -1;
    int part = part_label[static_cast<size_t>(verts[0])];
    auto cmp = [&](size_t c) {
        int cp = part_label[static_cast<size_t>(chains[c][0])];
        if (cp != part) return cp < part;
        if (chains[c].size() != verts.size()) return chains[c].size() < verts.size();
        return chains[c] < verts;
    };
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (cmp(mid)) lo = mid + 1; else hi = mid;
    }
    return lo < chains.size() && key(lo) == verts ? static_cast<int>(lo) : -1;
}

int OrderComplex::vertex_of(SimplexId source) const {
    return source < vertex_of_.size() ? vertex_of_[source] : -1;
}

OrderComplex morse_nerve(const SimplicialComplex& K,
                         const std::vector<SimplexSet>& sets) {
    for (size_t i = 0; i < sets.size(); ++i)
        for (size_t j = i + 1; j < sets.size(); ++j)
            if (sets[i].intersects(sets[j]))
                throw std::invalid_argument("morse_nerve: sets are not disjoint");

    OrderComplex n;
    n.vertex_of_.assign(K.size(), -1);
    // Nerve vertices: ascending source id within each set, sets in order.
    for (size_t p = 0; p < sets.size(); ++p) {
        sets[p].for_each([&](SimplexId s) {
            n.vertex_of_[s] = static_cast<int>(n.back_map.size());
            n.back_map.push_back(s);
            n.part_label.push_back(static_cast<int>(p));
        });
    }

    // Enumerate chains per set by DFS upward along the strict face order;
    // starting from every member and extending past the last element keeps
    // generation unique.
    std::vector<std::vector<std::vector<int>>> staged(sets.size());
    std::vector<int> cur;
    for (size_t p = 0; p < sets.size(); ++p) {
        auto& out = staged[p];
        auto extend = [&](auto&& self, SimplexId last) -> void {
            out.push_back(cur);
            for (SimplexId up : K.proper_cofaces(last)) {
                if (!sets[p].contains(up)) continue;
                cur.push_back(n.vertex_of_[up]);
                self(self, up);
                cur.pop_back();
            }
        };
        sets[p].for_each([&](SimplexId s) {
            cur.assign(1, n.vertex_of_[s]);
            extend(extend, s);
        });
        // Deterministic cell order inside the set: (length, lex). Nerve
        // vertex ids ascend with source id, and faces have smaller source
        // ids... not in general — sort each chain's vertex list numerically.
        for (auto& c : out) std::sort(c.begin(), c.end());
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a < b;
        });
    }

    for (size_t p = 0; p < sets.size(); ++p)
        for (auto& c : staged[p]) n.chains.push_back(std::move(c));

    // Boundary: all subchains of length k (drop one vertex).
    n.cx.dim.resize(n.chains.size());
    n.cx.boundary.resize(n.chains.size());
    for (size_t c = 0; c < n.chains.size(); ++c) {
        const auto& verts = n.chains[c];
        n.cx.dim[c] = static_cast<int>(verts.size()) - 1;
        n.cx.max_dim = std::max(n.cx.max_dim, n.cx.dim[c]);
        if (verts.size() < 2) continue;
        ChainZ2 bd;
        std::vector<int> sub;
        for (size_t drop = 0; drop < verts.size(); ++drop) {
            sub.clear();
            for (size_t i = 0; i < verts.size(); ++i)
                if (i != drop) sub.push_back(verts[i]);
            int f = n.find_chain(sub);
            if (f < 0) throw std::logic_error("morse_nerve: missing subchain");
            bd.push_back(f);
        }
        std::sort(bd.begin(), bd.end());
        n.cx.boundary[c] = std::move(bd);
    }
    n.cx.verify();
    return n;
}

std::vector<int> nerve_inclusion(const OrderComplex& ni, const OrderComplex& nj) {
    // Refinement check: each source set of ni must land inside one set of nj.
    std::map<int, int> part_image;  // ni part -> nj part
    for (size_t v = 0; v < ni.back_map.size(); ++v) {
        int w = nj.vertex_of(ni.back_map[v]);
        if (w < 0)
            throw std::invalid_argument(
                "nerve_inclusion: source simplex " + std::to_string(ni.back_map[v]) +
                " of part " + std::to_string(ni.part_label[v]) +
                " is absent from the target decomposition");
        int pi = ni.part_label[v];
        int pj = nj.part_label[static_cast<size_t>(w)];
        auto [it, fresh] = part_image.emplace(pi, pj);
        if (!fresh && it->second != pj)
            throw std::invalid_argument(
                "nerve_inclusion: part " + std::to_string(pi) +
                " is split across target parts " + std::to_string(it->second) +
                " and " + std::to_string(pj) + " (not a refinement)");
    }
    std::vector<int> cell_map(ni.size(), -1);
    std::vector<int> img;
    for (size_t c = 0; c < ni.chains.size(); ++c) {
        img.clear();
        for (int v : ni.chains[c])
            img.push_back(nj.vertex_of(ni.back_map[static_cast<size_t>(v)]));
        std::sort(img.begin(), img.end());
        int t = nj.find_chain(img);
        if (t < 0) throw std::logic_error("nerve_inclusion: image chain missing");
        cell_map[c] = t;
    }
    return cell_map;
}

TopologyBasis tm_basis(const SimplicialComplex& K,
                       const std::vector<SimplexSet>& sets) {
    TopologyBasis b;
    std::vector<int> pos(K.size(), -1);
    for (size_t p = 0; p < sets.size(); ++p) {
        sets[p].for_each([&](SimplexId s) {
            pos[s] = static_cast<int>(b.elements.size());
            b.elements.push_back(s);
            b.label.push_back(static_cast<int>(p));
        });
    }
    if (b.elements.size() > 64)
        throw std::invalid_argument("tm_basis: union exceeds 64 elements");
    // Minimal T_M neighborhood of s: (owning set) ∩ st(s); st(s) is the
    // minimal Alexandrov-open neighborhood (s plus its proper cofaces).
    for (size_t i = 0; i < b.elements.size(); ++i) {
        SimplexId s = b.elements[i];
        uint64_t m = uint64_t(1) << i;
        for (SimplexId up : K.proper_cofaces(s)) {
            int j = pos[up];
            if (j >= 0 && b.label[static_cast<size_t>(j)] == b.label[i])
                m |= uint64_t(1) << j;
        }
        b.sets.push_back(m);
    }
    return b;
}

bool tb_open(const TopologyBasis& b, uint64_t m) {
    uint64_t cover = 0;
    for (uint64_t s : b.sets)
        if ((s & ~m) == 0) cover |= s;
    return cover == m;
}

std::vector<uint64_t> tb_components(const TopologyBasis& b) {
    size_t n = b.elements.size();
    // In a finite space x and y are directly linked when one lies in the
    // minimal neighborhood of the other; components are the transitive
    // closure of that relation. b.sets[i] is the minimal neighborhood of i.
    std::vector<size_t> parent(n);
    for (size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (b.sets[i] & (uint64_t(1) << j)) parent[find(i)] = find(j);
    std::map<size_t, uint64_t> comp;
    for (size_t i = 0; i < n; ++i) comp[find(i)] |= uint64_t(1) << i;
    std::vector<uint64_t> out;
    for (auto& [root, mask] : comp) out.push_back(mask);
    return out;
}

void write_order_complex(std::ostream& out, const SimplicialComplex& K,
                         const OrderComplex& n) {
    for (size_t c = 0; c < n.chains.size(); ++c) {
        out << n.cx.dim[c] << ":";
        for (int v : n.chains[c])
            out << " " << K.label(n.back_map[static_cast<size_t>(v)]);
        out << "\n";
    }
}

}  // namespace mdyn
