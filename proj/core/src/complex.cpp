#include "morsedyn/complex.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mdyn {

SimplicialComplex SimplicialComplex::build(std::vector<Pt> coords,
                                           const std::vector<std::vector<int>>& toplexes,
                                           int vertex_count) {
    int nverts = vertex_count;
    if (!coords.empty()) {
        if (nverts >= 0 && nverts != static_cast<int>(coords.size()))
            throw std::invalid_argument("vertex count does not match coordinate list");
        nverts = static_cast<int>(coords.size());
    }
    std::set<std::vector<int>> seen;
    std::set<std::vector<int>> simplices;
    int max_vertex = -1;
    for (auto t : toplexes) {
        if (t.empty()) throw std::invalid_argument("empty toplex");
        std::sort(t.begin(), t.end());
        if (std::adjacent_find(t.begin(), t.end()) != t.end())
            throw std::invalid_argument("repeated vertex in toplex");
        if (!seen.insert(t).second) throw std::invalid_argument("duplicate toplex");
        for (int v : t) {
            if (v < 0 || (nverts >= 0 && v >= nverts))
                throw std::invalid_argument("vertex id out of range");
            max_vertex = std::max(max_vertex, v);
        }
        // face closure: all nonempty subsets
        size_t k = t.size();
        for (unsigned mask = 1; mask < (1u << k); ++mask) {
            std::vector<int> f;
            for (size_t i = 0; i < k; ++i)
                if (mask & (1u << i)) f.push_back(t[i]);
            simplices.insert(std::move(f));
        }
    }
    if (nverts < 0) nverts = max_vertex + 1;
    // Every vertex of the complex is a simplex even if no toplex grew from it?
    // No: only faces of listed toplexes exist.  Stray coordinates are allowed.
    SimplicialComplex K;
    K.nverts_ = nverts;
    K.coords_ = std::move(coords);

    std::vector<std::vector<int>> ordered(simplices.begin(), simplices.end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const std::vector<int>& a, const std::vector<int>& b) {
                         if (a.size() != b.size()) return a.size() < b.size();
                         return a < b;
                     });
    K.verts_ = std::move(ordered);
    size_t n = K.verts_.size();
    for (size_t i = 0; i < n; ++i) {
        K.index_[K.verts_[i]] = static_cast<SimplexId>(i);
        K.dim_ = std::max(K.dim_, static_cast<int>(K.verts_[i].size()) - 1);
    }
    K.facets_.resize(n);
    K.cofacets_.resize(n);
    K.faces_all_.resize(n);
    K.cofaces_all_.resize(n);
    for (size_t i = 0; i < n; ++i) {
        const auto& vs = K.verts_[i];
        if (vs.size() == 1) continue;
        for (size_t drop = 0; drop < vs.size(); ++drop) {
            std::vector<int> f;
            f.reserve(vs.size() - 1);
            for (size_t j = 0; j < vs.size(); ++j)
                if (j != drop) f.push_back(vs[j]);
            SimplexId fi = K.index_.at(f);
            K.facets_[i].push_back(fi);
            K.cofacets_[fi].push_back(static_cast<SimplexId>(i));
        }
        std::sort(K.facets_[i].begin(), K.facets_[i].end());
    }
    for (size_t i = 0; i < n; ++i)
        std::sort(K.cofacets_[i].begin(), K.cofacets_[i].end());
    // transitive closures; id order is a linear extension so one pass suffices
    for (size_t i = 0; i < n; ++i) {
        std::set<SimplexId> acc;
        for (SimplexId f : K.facets_[i]) {
            acc.insert(f);
            acc.insert(K.faces_all_[f].begin(), K.faces_all_[f].end());
        }
        K.faces_all_[i].assign(acc.begin(), acc.end());
    }
    for (size_t i = n; i-- > 0;) {
        std::set<SimplexId> acc;
        for (SimplexId c : K.cofacets_[i]) {
            acc.insert(c);
            acc.insert(K.cofaces_all_[c].begin(), K.cofaces_all_[c].end());
        }
        K.cofaces_all_[i].assign(acc.begin(), acc.end());
    }
    for (size_t i = 0; i < n; ++i)
        if (K.cofacets_[i].empty()) K.toplexes_.push_back(static_cast<SimplexId>(i));
    return K;
}

bool SimplicialComplex::is_face(SimplexId a, SimplexId b) const {
    if (a == b) return true;
    const auto& fa = faces_all_[b];
    return std::binary_search(fa.begin(), fa.end(), a);
}

long SimplicialComplex::find(const std::vector<int>& vertex_ids) const {
    std::vector<int> v = vertex_ids;
    std::sort(v.begin(), v.end());
    auto it = index_.find(v);
    return it == index_.end() ? -1 : static_cast<long>(it->second);
}

SimplexSet SimplicialComplex::full_set() const {
    SimplexSet s(size());
    for (SimplexId i = 0; i < size(); ++i) s.insert(i);
    return s;
}

std::string SimplicialComplex::label(SimplexId s) const {
    std::string out;
    for (size_t i = 0; i < verts_[s].size(); ++i) {
        if (i) out += '.';
        out += std::to_string(verts_[s][i]);
    }
    return out;
}

SimplexSet closure(const SimplicialComplex& K, const SimplexSet& A) {
    SimplexSet out = A;
    A.for_each([&](SimplexId s) {
        for (SimplexId f : K.proper_faces(s)) out.insert(f);
    });
    return out;
}

SimplexSet upper_set(const SimplicialComplex& K, SimplexId s) {
    SimplexSet out = K.make_set();
    out.insert(s);
    for (SimplexId c : K.proper_cofaces(s)) out.insert(c);
    return out;
}

bool is_closed(const SimplicialComplex& K, const SimplexSet& A) {
    bool ok = true;
    A.for_each([&](SimplexId s) {
        if (!ok) return;
        for (SimplexId f : K.facets(s))
            if (!A.contains(f)) { ok = false; return; }
    });
    return ok;
}

bool is_open(const SimplicialComplex& K, const SimplexSet& A) {
    bool ok = true;
    A.for_each([&](SimplexId s) {
        if (!ok) return;
        for (SimplexId c : K.cofacets(s))
            if (!A.contains(c)) { ok = false; return; }
    });
    return ok;
}

SimplexSet interval(const SimplicialComplex& K, SimplexId a, SimplexId b) {
    SimplexSet out = K.make_set();
    if (!K.is_face(a, b)) return out;
    out.insert(a);
    out.insert(b);
    for (SimplexId t : K.proper_faces(b))
        if (K.is_face(a, t)) out.insert(t);
    return out;
}

std::vector<SimplexSet> order_components(const SimplicialComplex& K, const SimplexSet& A) {
    auto ids = A.to_vector();
    std::vector<int> parent(ids.size());
    for (size_t i = 0; i < ids.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> root = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<int> pos(A.universe(), -1);
    for (size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = static_cast<int>(i);
    for (size_t i = 0; i < ids.size(); ++i)
        for (SimplexId f : K.proper_faces(ids[i]))
            if (A.contains(f)) parent[root(static_cast<int>(i))] = root(pos[f]);
    std::map<int, SimplexSet> comps;
    for (size_t i = 0; i < ids.size(); ++i) {
        auto [it, fresh] = comps.try_emplace(root(static_cast<int>(i)), A.universe());
        it->second.insert(ids[i]);
    }
    std::vector<SimplexSet> out;
    out.reserve(comps.size());
    for (auto& [r, s] : comps) out.push_back(std::move(s));
    return out;
}

bool is_orderly_convex(const SimplicialComplex& K, const SimplexSet& A,
                       std::array<SimplexId, 3>* witness) {
    bool ok = true;
    A.for_each([&](SimplexId s2) {
        if (!ok) return;
        for (SimplexId t : K.proper_faces(s2)) {
            if (A.contains(t)) continue;
            for (SimplexId s1 : K.proper_faces(t)) {
                if (A.contains(s1)) {
                    if (witness) *witness = {s1, t, s2};
                    ok = false;
                    return;
                }
            }
        }
    });
    return ok;
}

bool is_orderly_convex(const SimplicialComplex& K, const SimplexSet& A) {
    return is_orderly_convex(K, A, nullptr);
}

SimplicialComplex read_mesh(std::istream& in) {
    std::vector<Pt> coords;
    std::vector<std::vector<int>> toplexes;
    std::string line;
    bool one_dim = false;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            std::string xs, ys;
            if (!(ls >> xs)) throw std::invalid_argument("mesh: bad vertex line");
            if (ls >> ys) {
                coords.push_back({parse_rational(xs), parse_rational(ys)});
            } else {
                coords.push_back({parse_rational(xs), Rat(0)});
                one_dim = true;
            }
        } else if (tag == "t") {
            int i, j, k;
            if (!(ls >> i >> j >> k)) throw std::invalid_argument("mesh: bad triangle line");
            toplexes.push_back({i, j, k});
        } else if (tag == "e") {
            int i, j;
            if (!(ls >> i >> j)) throw std::invalid_argument("mesh: bad edge line");
            toplexes.push_back({i, j});
        } else {
            throw std::invalid_argument("mesh: unknown record '" + tag + "'");
        }
    }
    (void)one_dim;
    for (const auto& t : toplexes)
        for (int v : t)
            if (v < 0 || v >= static_cast<int>(coords.size()))
                throw std::invalid_argument("mesh: toplex references missing vertex");
    return SimplicialComplex::build(std::move(coords), toplexes);
}

void write_mesh(std::ostream& out, const SimplicialComplex& K) {
    for (int v = 0; v < K.vertex_count(); ++v) {
        const Pt& p = K.coord(v);
        out << "v " << format_double(to_double(p.x)) << ' '
            << format_double(to_double(p.y)) << '\n';
    }
    for (SimplexId t : K.toplexes()) {
        const auto& vs = K.vertices(t);
        if (vs.size() == 3)
            out << "t " << vs[0] << ' ' << vs[1] << ' ' << vs[2] << '\n';
        else if (vs.size() == 2)
            out << "e " << vs[0] << ' ' << vs[1] << '\n';
    }
}

}  // namespace mdyn
