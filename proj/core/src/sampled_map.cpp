#include "morsedyn/sampled_map.hpp"

#include <array>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mdyn {

std::vector<SimplexId> toplexes_containing(const SimplicialComplex& K, const BucketIndex& index,
                                           const Pt& p) {
    std::vector<SimplexId> out;
    for (SimplexId t : index.toplexes_near(p)) {
        const auto& vs = K.vertices(t);
        bool in = false;
        if (vs.size() == 3) {
            in = point_in_closed_triangle(K.coord(vs[0]), K.coord(vs[1]), K.coord(vs[2]), p);
        } else if (vs.size() == 2) {
            in = on_segment(K.coord(vs[0]), K.coord(vs[1]), p);
        } else {
            in = K.coord(vs[0]) == p;
        }
        if (in) out.push_back(t);
    }
    return out;
}

FrequencyTable count_frequencies(const SimplicialComplex& K,
                                 const std::vector<SamplePair>& pairs,
                                 const BucketIndex* index) {
    if (!K.has_geometry()) throw std::invalid_argument("count_frequencies: no geometry");
    if (pairs.empty()) throw std::invalid_argument("count_frequencies: empty sample");
    for (SimplexId t : K.toplexes())
        if (K.dim(t) != K.dim())
            throw std::invalid_argument("count_frequencies: mixed-dimension mesh");

    std::optional<BucketIndex> own;
    if (!index) {
        own.emplace(K);
        index = &*own;
    }

    // Double-precision triangle coordinates, CCW-normalized, for a filtered
    // membership test; signs within kFilterEps of zero fall back to exact
    // arithmetic. The margin dwarfs both the rounding of the rational mesh
    // coordinates to double and the cross-product rounding error.
    constexpr double kFilterEps = 1e-9;
    std::vector<std::array<double, 6>> tri(K.size(), {0, 0, 0, 0, 0, 0});
    std::vector<char> is_tri(K.size(), 0);
    for (SimplexId t : K.toplexes()) {
        const auto& vs = K.vertices(t);
        if (vs.size() != 3) continue;
        Pt a = K.coord(vs[0]), b = K.coord(vs[1]), c = K.coord(vs[2]);
        if (orient(a, b, c) < 0) std::swap(b, c);
        tri[t] = {to_double(a.x), to_double(a.y), to_double(b.x),
                  to_double(b.y), to_double(c.x), to_double(c.y)};
        is_tri[t] = 1;
    }
    auto locate = [&](double px, double py) {
        std::vector<SimplexId> out;
        std::optional<Pt> pt;  // exact coordinates, built on first fallback
        auto pr = [&]() -> const Pt& {
            if (!pt) pt = Pt{rational_from_double(px), rational_from_double(py)};
            return *pt;
        };
        double pad = 1e-9 * (1.0 + std::abs(px) + std::abs(py));
        for (SimplexId t : index->toplexes_in_box(px - pad, py - pad, px + pad, py + pad)) {
            const auto& vs = K.vertices(t);
            bool in;
            if (is_tri[t]) {
                const auto& q = tri[t];
                double d1 = (q[2] - q[0]) * (py - q[1]) - (q[3] - q[1]) * (px - q[0]);
                double d2 = (q[4] - q[2]) * (py - q[3]) - (q[5] - q[3]) * (px - q[2]);
                double d3 = (q[0] - q[4]) * (py - q[5]) - (q[1] - q[5]) * (px - q[4]);
                if (d1 > kFilterEps && d2 > kFilterEps && d3 > kFilterEps) {
                    out.push_back(t);
                    continue;
                }
                if (d1 < -kFilterEps || d2 < -kFilterEps || d3 < -kFilterEps) continue;
                in = point_in_closed_triangle(K.coord(vs[0]), K.coord(vs[1]),
                                              K.coord(vs[2]), pr());
            } else if (vs.size() == 2) {
                in = on_segment(K.coord(vs[0]), K.coord(vs[1]), pr());
            } else {
                in = K.coord(vs[0]) == pr();
            }
            if (in) out.push_back(t);
        }
        return out;
    };

    FrequencyTable table;
    for (const SamplePair& s : pairs) {
        auto tx = locate(s.x1, s.x2);
        auto ty = locate(s.y1, s.y2);
        if (tx.empty() || ty.empty()) {
            ++table.rejected;
            continue;
        }
        ++table.accepted;
        for (SimplexId a : tx)
            for (SimplexId b : ty) {
                long& c = table.counts[{a, b}];
                ++c;
                if (c > table.n_max) table.n_max = c;
            }
    }
    return table;
}

CDS build_f_mu(const SimplicialComplex& K, const FrequencyTable& table, const Rat& mu,
               ConvexityEngine* engine) {
    if (mu < 0 || mu > 1) throw std::invalid_argument("build_f_mu: mu outside [0,1]");
    std::optional<ConvexityEngine> own;
    if (!engine) {
        own.emplace(K);
        engine = &*own;
    }

    // A_{mu,t} per toplex. mu = 0 admits every toplex (n >= 0 always holds).
    std::unordered_map<SimplexId, SimplexSet> A;
    if (mu == 0) {
        SimplexSet all(K.size());
        for (SimplexId t : K.toplexes()) all.insert(t);
        for (SimplexId t : K.toplexes()) A.emplace(t, all);
    } else {
        for (const auto& [key, n] : table.counts) {
            if (Rat(n) < mu * table.n_max) continue;
            auto [it, fresh] = A.try_emplace(key.first, SimplexSet(K.size()));
            it->second.insert(key.second);
        }
    }

    CDS F(K);
    std::unordered_map<SimplexSet, SimplexSet, SimplexSetHash> memo;
    for (SimplexId s = 0; s < K.size(); ++s) {
        SimplexSet u(K.size());
        bool any = false;
        auto add = [&](SimplexId t) {
            auto it = A.find(t);
            if (it != A.end()) {
                u |= it->second;
                any = true;
            }
        };
        if (K.is_toplex(s)) add(s);
        for (SimplexId c : K.proper_cofaces(s))
            if (K.is_toplex(c)) add(c);
        if (!any || u.empty()) continue;
        auto it = memo.find(u);
        if (it == memo.end()) it = memo.emplace(u, engine->co(u)).first;
        F.set_successors(s, it->second);
    }
    return F;
}

void write_samples(std::ostream& out, const std::vector<SamplePair>& pairs, int dim) {
    for (const SamplePair& s : pairs) {
        if (dim == 1)
            out << format_double(s.x1) << ',' << format_double(s.y1) << '\n';
        else
            out << format_double(s.x1) << ',' << format_double(s.x2) << ','
                << format_double(s.y1) << ',' << format_double(s.y2) << '\n';
    }
}

std::vector<SamplePair> read_samples(std::istream& in) {
    std::vector<SamplePair> pairs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> vals;
        std::istringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) vals.push_back(std::stod(field));
        SamplePair p;
        if (vals.size() == 2) {
            p.x1 = vals[0];
            p.y1 = vals[1];
        } else if (vals.size() == 4) {
            p.x1 = vals[0];
            p.x2 = vals[1];
            p.y1 = vals[2];
            p.y2 = vals[3];
        } else {
            throw std::runtime_error("read_samples: expected 2 or 4 fields: " + line);
        }
        pairs.push_back(p);
    }
    return pairs;
}

}  // namespace mdyn
