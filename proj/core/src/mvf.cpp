#include "morsedyn/mvf.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "morsedyn/homology.hpp"

namespace mdyn {

MultivectorField validate_mvf(const SimplicialComplex& K, std::vector<SimplexSet> parts) {
    MultivectorField V;
    V.K = &K;
    V.part_of.assign(K.size(), -1);
    for (size_t p = 0; p < parts.size(); ++p) {
        if (parts[p].empty()) throw std::invalid_argument("validate_mvf: empty part");
        bool clash = false;
        parts[p].for_each([&](SimplexId s) {
            if (V.part_of[s] >= 0) clash = true;
            V.part_of[s] = static_cast<int>(p);
        });
        if (clash) throw std::invalid_argument("validate_mvf: parts overlap");
        std::array<SimplexId, 3> w;
        if (!is_orderly_convex(K, parts[p], &w))
            throw std::invalid_argument("validate_mvf: part not orderly convex, witness " +
                                        K.label(w[0]) + " < " + K.label(w[1]) + " < " +
                                        K.label(w[2]));
    }
    for (SimplexId s = 0; s < K.size(); ++s)
        if (V.part_of[s] < 0)
            throw std::invalid_argument("validate_mvf: simplex " + K.label(s) + " uncovered");
    V.parts = std::move(parts);
    return V;
}

MultivectorField singleton_mvf(const SimplicialComplex& K) {
    std::vector<SimplexSet> parts;
    parts.reserve(K.size());
    for (SimplexId s = 0; s < K.size(); ++s) parts.push_back(SimplexSet::of(K.size(), {s}));
    return validate_mvf(K, std::move(parts));
}

CDS generated_system(const MultivectorField& V) {
    const SimplicialComplex& K = *V.K;
    CDS F(K);
    for (SimplexId s = 0; s < K.size(); ++s) {
        SimplexSet img = V.parts[static_cast<size_t>(V.part_of[s])];
        img.insert(s);
        for (SimplexId f : K.proper_faces(s)) img.insert(f);
        F.set_successors(s, img);
    }
    if (!(maximal_invariant_set(F) == K.full_set()))
        throw std::logic_error("generated_system: S(F_V) is not the whole complex");
    return F;
}

MultivectorField intersect(const MultivectorField& V, const MultivectorField& W) {
    if (V.K != W.K) throw std::invalid_argument("intersect: different complexes");
    const SimplicialComplex& K = *V.K;
    std::map<std::pair<int, int>, SimplexSet> groups;
    for (SimplexId s = 0; s < K.size(); ++s) {
        auto key = std::make_pair(V.part_of[s], W.part_of[s]);
        auto [it, fresh] = groups.try_emplace(key, K.size());
        it->second.insert(s);
    }
    std::vector<SimplexSet> parts;
    parts.reserve(groups.size());
    for (auto& [k, g] : groups) parts.push_back(std::move(g));
    return validate_mvf(K, std::move(parts));
}

MultivectorField pullback(const SimplicialComplex& K, const std::vector<SimplexId>& f,
                          const MultivectorField& Vp) {
    if (f.size() != K.size()) throw std::invalid_argument("pullback: map size mismatch");
    const SimplicialComplex& Kp = *Vp.K;
    for (SimplexId s = 0; s < K.size(); ++s) {
        if (f[s] >= Kp.size()) throw std::invalid_argument("pullback: image out of range");
        for (SimplexId t : K.facets(s))
            if (!Kp.is_face(f[t], f[s]))
                throw std::invalid_argument("pullback: map not order-preserving at " +
                                            K.label(s));
    }
    std::map<int, SimplexSet> groups;
    for (SimplexId s = 0; s < K.size(); ++s) {
        auto [it, fresh] = groups.try_emplace(Vp.part_of[f[s]], K.size());
        it->second.insert(s);
    }
    std::vector<SimplexSet> parts;
    parts.reserve(groups.size());
    for (auto& [k, g] : groups) parts.push_back(std::move(g));
    return validate_mvf(K, std::move(parts));
}

bool inscribed(const MultivectorField& V, const MultivectorField& W) {
    if (V.K != W.K) return false;
    for (const SimplexSet& p : V.parts) {
        int w = -1;
        bool ok = true;
        p.for_each([&](SimplexId s) {
            if (w < 0) w = W.part_of[s];
            else if (W.part_of[s] != w) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

namespace {

Pt barycenter(const SimplicialComplex& K, SimplexId s) {
    Pt b{0, 0};
    const auto& vs = K.vertices(s);
    for (int v : vs) {
        b.x += K.coord(v).x;
        b.y += K.coord(v).y;
    }
    b.x /= static_cast<int>(vs.size());
    b.y /= static_cast<int>(vs.size());
    return b;
}

// Ray from `anchor` along `dir` immediately enters the open cell of t.
bool ray_enters_cell(const SimplicialComplex& K, SimplexId t, const Pt& anchor, const Pt& dir) {
    const auto& vs = K.vertices(t);
    if (vs.size() == 3)
        return ray_enters_open_triangle(K.coord(vs[0]), K.coord(vs[1]), K.coord(vs[2]), anchor,
                                        dir);
    if (vs.size() == 2) return ray_enters_open_segment(K.coord(vs[0]), K.coord(vs[1]), anchor, dir);
    return false;  // a ray never enters a point cell
}

}  // namespace

MultivectorField cvcmf(const SimplicialComplex& K, const VectorCloud& cloud, double alpha_deg) {
    if (!K.has_geometry()) throw std::invalid_argument("cvcmf: complex has no geometry");
    if (cloud.size() != static_cast<size_t>(K.vertex_count()))
        throw std::invalid_argument("cvcmf: one vector per vertex required");
    const double inf = std::numeric_limits<double>::infinity();
    size_t n = K.size();
    std::vector<SimplexId> m(n);
    for (SimplexId s = 0; s < n; ++s) m[s] = s;  // (a) identity

    // (b) any toplex in the star pointed by the mean vector, anchored at the
    // barycenter; smallest qualifying id, fall back to the identity.
    for (SimplexId s = 0; s < n; ++s) {
        double mx = 0, my = 0;
        const auto& vs = K.vertices(s);
        for (int v : vs) {
            mx += cloud.vx[static_cast<size_t>(v)];
            my += cloud.vy[static_cast<size_t>(v)];
        }
        mx /= static_cast<double>(vs.size());
        my /= static_cast<double>(vs.size());
        if (mx == 0 && my == 0) continue;
        Pt anchor = barycenter(K, s);
        Pt dir{rational_from_double(mx), rational_from_double(my)};
        if (K.is_toplex(s) && ray_enters_cell(K, s, anchor, dir)) {
            m[s] = s;
            continue;
        }
        for (SimplexId c : K.proper_cofaces(s)) {
            if (!K.is_toplex(c)) continue;
            if (ray_enters_cell(K, c, anchor, dir)) {
                m[s] = c;
                break;
            }
        }
    }

    // (c) align each vertex to its best coface of angle <= alpha, preferring
    // low dimension, then small angle, then small id. The vertex itself is
    // not a candidate; with no candidate the step-(b) value stands.
    for (SimplexId s = 0; s < n; ++s) {
        if (K.dim(s) != 0) continue;
        int v = K.vertices(s)[0];
        double vx = cloud.vx[static_cast<size_t>(v)], vy = cloud.vy[static_cast<size_t>(v)];
        bool zero = (vx == 0 && vy == 0);
        Pt anchor = K.coord(v);
        Pt dir = zero ? Pt{0, 0} : Pt{rational_from_double(vx), rational_from_double(vy)};
        int best_dim = -1;
        double best_angle = 0;
        SimplexId best = s;
        bool found = false;
        for (SimplexId c : K.proper_cofaces(s)) {
            double angle;
            if (zero) {
                angle = 0;
            } else if (K.is_toplex(c)) {
                angle = ray_enters_cell(K, c, anchor, dir) ? 0 : inf;
            } else {
                const auto& cv = K.vertices(c);
                angle = angle_to_line_deg(K.coord(cv[0]), K.coord(cv[1]), vx, vy);
            }
            if (!(angle <= alpha_deg)) continue;
            int d = K.dim(c);
            if (!found || d < best_dim || (d == best_dim && angle < best_angle)) {
                found = true;
                best_dim = d;
                best_angle = angle;
                best = c;  // proper_cofaces ascend in id inside each dimension
            }
        }
        if (found) m[s] = best;
    }

    for (SimplexId s = 0; s < n; ++s)
        if (!K.is_face(s, m[s]))
            throw std::logic_error("cvcmf: alignment produced m value that is not a coface");

    // (d) remove convexity conflicts, descending dimension, faces by id.
    std::vector<SimplexId> order(n);
    for (SimplexId s = 0; s < n; ++s) order[s] = s;
    std::stable_sort(order.begin(), order.end(),
                     [&](SimplexId a, SimplexId b) { return K.dim(a) > K.dim(b); });
    size_t guard = 0, limit = n * n + n;
    for (SimplexId s : order) {
        bool changed = true;
        while (changed) {
            changed = false;
            SimplexSet is = interval(K, s, m[s]);
            for (SimplexId t : K.proper_faces(s)) {
                if (m[t] == m[s]) continue;
                if (!interval(K, t, m[t]).intersects(is)) continue;
                m[t] = s;
                m[s] = s;
                changed = true;
                if (++guard > limit)
                    throw std::logic_error("cvcmf: conflict loop exceeded iteration bound");
                break;
            }
        }
    }

    // (e) parts = nonempty preimages of m.
    std::map<SimplexId, SimplexSet> groups;
    for (SimplexId s = 0; s < n; ++s) {
        auto [it, fresh] = groups.try_emplace(m[s], n);
        it->second.insert(s);
    }
    std::vector<SimplexSet> parts;
    parts.reserve(groups.size());
    for (auto& [k, g] : groups) parts.push_back(std::move(g));
    return validate_mvf(K, std::move(parts));
}

bool is_trivial_morse(const SimplicialComplex& K, const SimplexSet& part) {
    SimplexSet clp = closure(K, part);
    SimplexSet mouth = clp - part;
    for (size_t b : relative_betti(K, clp, mouth))
        if (b != 0) return false;
    return true;
}

void write_mvf(std::ostream& out, const MultivectorField& V) {
    for (size_t p = 0; p < V.parts.size(); ++p) {
        out << p << ":";
        V.parts[p].for_each([&](SimplexId s) { out << ' ' << s; });
        out << '\n';
    }
}

std::vector<SimplexSet> read_mvf_parts(std::istream& in, const SimplicialComplex& K) {
    std::map<unsigned long, SimplexSet> by_id;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("read_mvf_parts: missing ':' in line: " + line);
        unsigned long p = std::stoul(line.substr(0, colon));
        auto [it, fresh] = by_id.try_emplace(p, K.size());
        std::istringstream rest(line.substr(colon + 1));
        unsigned long s;
        while (rest >> s) {
            if (s >= K.size()) throw std::runtime_error("read_mvf_parts: id out of range");
            it->second.insert(static_cast<SimplexId>(s));
        }
    }
    std::vector<SimplexSet> parts;
    parts.reserve(by_id.size());
    for (auto& [p, g] : by_id) parts.push_back(std::move(g));
    return parts;
}

void write_vector_cloud(std::ostream& out, const SimplicialComplex& K, const VectorCloud& c) {
    for (int v = 0; v < K.vertex_count(); ++v)
        out << format_double(to_double(K.coord(v).x)) << ','
            << format_double(to_double(K.coord(v).y)) << ','
            << format_double(c.vx[static_cast<size_t>(v)]) << ','
            << format_double(c.vy[static_cast<size_t>(v)]) << '\n';
}

VectorCloud read_vector_cloud(std::istream& in) {
    VectorCloud c;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string field;
        std::vector<double> vals;
        while (std::getline(ss, field, ',')) vals.push_back(std::stod(field));
        if (vals.size() != 4)
            throw std::runtime_error("read_vector_cloud: expected 4 fields: " + line);
        c.vx.push_back(vals[2]);
        c.vy.push_back(vals[3]);
    }
    return c;
}

}  // namespace mdyn
