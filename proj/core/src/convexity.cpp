#include "morsedyn/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mdyn {

namespace {

// Parameter of x on the line through a,b: x = a + t (b - a). Requires a != b.
Rat line_param(const Pt& a, const Pt& b, const Pt& x) {
    Rat dx = b.x - a.x, dy = b.y - a.y;
    return ((x.x - a.x) * dx + (x.y - a.y) * dy) / (dx * dx + dy * dy);
}

Pt line_point(const Pt& a, const Pt& b, const Rat& t) {
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

// Accumulates the 1-D convex hull of attained points and open intervals
// along one line, tracking endpoint attainment.
struct TraceBuilder {
    bool any = false;
    Rat lo, hi;
    bool lo_att = false, hi_att = false;

    void add_point(const Rat& t) {
        extend(t, true, t, true);
    }
    void add_open(Rat a, Rat b) {
        if (a > b) std::swap(a, b);
        extend(a, false, b, false);
    }
    void extend(const Rat& a, bool ac, const Rat& b, bool bc) {
        if (!any) {
            any = true;
            lo = a; lo_att = ac;
            hi = b; hi_att = bc;
            return;
        }
        if (a < lo) { lo = a; lo_att = ac; }
        else if (a == lo) lo_att = lo_att || ac;
        if (b > hi) { hi = b; hi_att = bc; }
        else if (b == hi) hi_att = hi_att || bc;
    }
    Iv result() const {
        if (!any) return {};
        return {lo, hi, lo_att, hi_att, true};
    }
};

}  // namespace

Iv intersect(const Iv& a, const Iv& b) {
    if (a.empty() || b.empty()) return {};
    Iv r;
    r.valid = true;
    if (a.lo > b.lo) { r.lo = a.lo; r.lo_closed = a.lo_closed; }
    else if (a.lo < b.lo) { r.lo = b.lo; r.lo_closed = b.lo_closed; }
    else { r.lo = a.lo; r.lo_closed = a.lo_closed && b.lo_closed; }
    if (a.hi < b.hi) { r.hi = a.hi; r.hi_closed = a.hi_closed; }
    else if (a.hi > b.hi) { r.hi = b.hi; r.hi_closed = b.hi_closed; }
    else { r.hi = a.hi; r.hi_closed = a.hi_closed && b.hi_closed; }
    if (r.empty()) return {};
    return r;
}

// --- region construction ------------------------------------------------------

namespace detail {

// Hull and kind only; boundary traces filled separately (they are the
// expensive part and the growth loop rarely needs them).
ConvRegion build_region_hull(const SimplicialComplex& K, const SimplexSet& D) {
    if (!K.has_geometry()) throw std::invalid_argument("build_region: complex has no geometry");

    // Vertices of the closure span the closed hull.
    std::vector<char> seen(static_cast<size_t>(K.vertex_count()), 0);
    std::vector<Pt> pts;
    D.for_each([&](SimplexId s) {
        for (int v : K.vertices(s)) {
            if (!seen[static_cast<size_t>(v)]) {
                seen[static_cast<size_t>(v)] = 1;
                pts.push_back(K.coord(v));
            }
        }
    });
    if (pts.empty()) throw std::invalid_argument("build_region: empty simplex set");

    ConvRegion r;
    r.hull = convex_hull(std::move(pts));
    if (r.hull.size() == 1) r.kind = ConvRegion::Kind::Point;
    else if (r.hull.size() == 2) r.kind = ConvRegion::Kind::Segment;
    else r.kind = ConvRegion::Kind::Polygon;
    return r;
}

void fill_region_traces(const SimplicialComplex& K, const SimplexSet& D, ConvRegion& r) {
    r.boundary.clear();
    if (r.kind == ConvRegion::Kind::Point) return;

    // Low-dimensional members of D contribute boundary attainment.
    std::vector<SimplexId> low;
    D.for_each([&](SimplexId s) {
        if (K.dim(s) <= 1) low.push_back(s);
    });

    auto trace_on = [&](const Pt& a, const Pt& b) {
        TraceBuilder tb;
        for (SimplexId s : low) {
            const auto& vs = K.vertices(s);
            if (vs.size() == 1) {
                const Pt& p = K.coord(vs[0]);
                if (on_segment(a, b, p)) tb.add_point(line_param(a, b, p));
            } else {
                const Pt& p = K.coord(vs[0]);
                const Pt& q = K.coord(vs[1]);
                if (on_segment(a, b, p) && on_segment(a, b, q))
                    tb.add_open(line_param(a, b, p), line_param(a, b, q));
            }
        }
        return tb.result();
    };

    if (r.kind == ConvRegion::Kind::Segment) {
        r.boundary.push_back(trace_on(r.hull[0], r.hull[1]));
    } else {
        size_t n = r.hull.size();
        r.boundary.reserve(n);
        for (size_t i = 0; i < n; ++i)
            r.boundary.push_back(trace_on(r.hull[i], r.hull[(i + 1) % n]));
    }
}

}  // namespace detail

ConvRegion build_region(const SimplicialComplex& K, const SimplexSet& D) {
    ConvRegion r = detail::build_region_hull(K, D);
    detail::fill_region_traces(K, D, r);
    return r;
}

// --- cell/region intersection predicate ----------------------------------------

namespace {

// Point on a polygon boundary: does the attained trace contain it?
bool boundary_point_attained(const ConvRegion& r, const Pt& p) {
    size_t n = r.hull.size();
    for (size_t i = 0; i < n; ++i) {
        const Pt& a = r.hull[i];
        const Pt& b = r.hull[(i + 1) % n];
        if (!on_segment(a, b, p)) continue;
        if (r.boundary[i].contains(line_param(a, b, p))) return true;
    }
    return false;
}

bool polygon_meets_vertex(const ConvRegion& r, const Pt& p) {
    if (point_strictly_in_convex(r.hull, p)) return true;
    if (!point_in_convex(r.hull, p)) return false;
    return boundary_point_attained(r, p);
}

bool polygon_meets_edge(const ConvRegion& r, const Pt& p, const Pt& q) {
    auto clip = clip_segment(p, q, r.hull);
    if (!clip) return false;
    // Restrict to the open cell (0,1).
    Iv I = intersect(Iv::closed(clip->first, clip->second), Iv::open(0, 1));
    if (I.empty()) return false;
    if (I.lo < I.hi) {
        Rat tm = (I.lo + I.hi) / 2;
        Pt pm = line_point(p, q, tm);
        if (point_strictly_in_convex(r.hull, pm)) return true;
        // The clipped piece runs along one hull edge; compare against its trace.
        size_t n = r.hull.size();
        Pt plo = line_point(p, q, I.lo), phi = line_point(p, q, I.hi);
        for (size_t i = 0; i < n; ++i) {
            const Pt& a = r.hull[i];
            const Pt& b = r.hull[(i + 1) % n];
            if (!on_segment(a, b, plo) || !on_segment(a, b, phi)) continue;
            Rat ulo = line_param(a, b, plo), uhi = line_param(a, b, phi);
            bool lo_c = I.lo_closed, hi_c = I.hi_closed;
            if (ulo > uhi) { std::swap(ulo, uhi); std::swap(lo_c, hi_c); }
            Iv U{ulo, uhi, lo_c, hi_c, true};
            if (!intersect(U, r.boundary[i]).empty()) return true;
        }
        return false;
    }
    // Single-point touch on the hull boundary.
    if (!I.lo_closed || !I.hi_closed) return false;
    Pt pt = line_point(p, q, I.lo);
    return boundary_point_attained(r, pt);
}

bool polygon_meets_triangle(const ConvRegion& r, const Pt& a, const Pt& b, const Pt& c) {
    // An open triangle meets the region iff the closed overlap has positive
    // area: boundary-only overlap never reaches the open cell, and positive
    // overlap area always contains interior-of-hull interior-of-cell points.
    Polygon tri{a, b, c};
    if (polygon_area2(tri) < 0) std::swap(tri[1], tri[2]);
    Polygon ov = clip_convex(tri, r.hull);
    return ov.size() >= 3 && polygon_area2(ov) != 0;
}

bool segment_meets_vertex(const ConvRegion& r, const Pt& p) {
    const Pt& A = r.hull[0];
    const Pt& B = r.hull[1];
    if (!on_segment(A, B, p)) return false;
    return r.boundary[0].contains(line_param(A, B, p));
}

bool segment_meets_edge(const ConvRegion& r, const Pt& p, const Pt& q) {
    const Pt& A = r.hull[0];
    const Pt& B = r.hull[1];
    if (collinear(A, B, p) && collinear(A, B, q)) {
        Rat up = line_param(A, B, p), uq = line_param(A, B, q);
        if (up > uq) std::swap(up, uq);
        return !intersect(Iv::open(up, uq), r.boundary[0]).empty();
    }
    // Transversal: solve p + t (q-p) = A + u (B-A).
    Rat d1x = q.x - p.x, d1y = q.y - p.y;
    Rat d2x = B.x - A.x, d2y = B.y - A.y;
    Rat den = d1x * d2y - d1y * d2x;
    if (den == 0) return false;  // parallel, disjoint lines
    Rat ex = A.x - p.x, ey = A.y - p.y;
    Rat t = (ex * d2y - ey * d2x) / den;
    Rat u = (ex * d1y - ey * d1x) / den;
    if (!(t > 0 && t < 1)) return false;
    return r.boundary[0].contains(u);
}

bool segment_meets_triangle(const ConvRegion& r, const Pt& a, const Pt& b, const Pt& c) {
    const Pt& A = r.hull[0];
    const Pt& B = r.hull[1];
    Polygon tri{a, b, c};
    if (polygon_area2(tri) < 0) std::swap(tri[1], tri[2]);
    auto clip = clip_segment(A, B, tri);
    if (!clip) return false;
    Iv I = intersect(Iv::closed(clip->first, clip->second), r.boundary[0]);
    if (I.empty()) return false;
    if (I.lo < I.hi) {
        Pt pm = line_point(A, B, (I.lo + I.hi) / 2);
        return point_in_open_triangle(a, b, c, pm);
    }
    return point_in_open_triangle(a, b, c, line_point(A, B, I.lo));
}

}  // namespace

bool cell_intersects_region(const SimplicialComplex& K, const ConvRegion& r, SimplexId s) {
    const auto& vs = K.vertices(s);
    switch (r.kind) {
        case ConvRegion::Kind::Polygon:
            if (vs.size() == 1) return polygon_meets_vertex(r, K.coord(vs[0]));
            if (vs.size() == 2) return polygon_meets_edge(r, K.coord(vs[0]), K.coord(vs[1]));
            return polygon_meets_triangle(r, K.coord(vs[0]), K.coord(vs[1]), K.coord(vs[2]));
        case ConvRegion::Kind::Segment:
            if (vs.size() == 1) return segment_meets_vertex(r, K.coord(vs[0]));
            if (vs.size() == 2) return segment_meets_edge(r, K.coord(vs[0]), K.coord(vs[1]));
            return segment_meets_triangle(r, K.coord(vs[0]), K.coord(vs[1]), K.coord(vs[2]));
        case ConvRegion::Kind::Point: {
            const Pt& P = r.hull[0];
            if (vs.size() == 1) return K.coord(vs[0]) == P;
            if (vs.size() == 2) {
                const Pt& p = K.coord(vs[0]);
                const Pt& q = K.coord(vs[1]);
                return collinear(p, q, P) && strictly_between(p, q, P);
            }
            return point_in_open_triangle(K.coord(vs[0]), K.coord(vs[1]), K.coord(vs[2]), P);
        }
    }
    return false;
}

// --- bucket index ---------------------------------------------------------------

BucketIndex::BucketIndex(const SimplicialComplex& K) : K_(K) {
    const auto& tops = K.toplexes();
    boxes_.resize(K.size(), {0, 0, 0, 0});
    bx0_ = by0_ = 1e300;
    bx1_ = by1_ = -1e300;
    if (!K.has_geometry() || tops.empty()) {
        nx_ = ny_ = 1;
        sx_ = sy_ = 1;
        cells_.resize(1);
        for (SimplexId t : tops) cells_[0].push_back(t);
        return;
    }
    for (SimplexId t : tops) {
        double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
        for (int v : K.vertices(t)) {
            double x = to_double(K.coord(v).x), y = to_double(K.coord(v).y);
            x0 = std::min(x0, x); x1 = std::max(x1, x);
            y0 = std::min(y0, y); y1 = std::max(y1, y);
        }
        // Pad the double box so exact geometry can never fall outside it.
        double px = (x1 - x0 + 1.0) * 1e-12, py = (y1 - y0 + 1.0) * 1e-12;
        boxes_[t] = {x0 - px, y0 - py, x1 + px, y1 + py};
        bx0_ = std::min(bx0_, boxes_[t][0]); bx1_ = std::max(bx1_, boxes_[t][2]);
        by0_ = std::min(by0_, boxes_[t][1]); by1_ = std::max(by1_, boxes_[t][3]);
    }
    int n = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(tops.size()))));
    nx_ = ny_ = n;
    sx_ = std::max((bx1_ - bx0_) / nx_, 1e-30);
    sy_ = std::max((by1_ - by0_) / ny_, 1e-30);
    cells_.resize(static_cast<size_t>(nx_) * ny_);
    for (SimplexId t : tops) {
        const auto& b = boxes_[t];
        int i0 = std::clamp(static_cast<int>((b[0] - bx0_) / sx_), 0, nx_ - 1);
        int i1 = std::clamp(static_cast<int>((b[2] - bx0_) / sx_), 0, nx_ - 1);
        int j0 = std::clamp(static_cast<int>((b[1] - by0_) / sy_), 0, ny_ - 1);
        int j1 = std::clamp(static_cast<int>((b[3] - by0_) / sy_), 0, ny_ - 1);
        for (int j = j0; j <= j1; ++j)
            for (int i = i0; i <= i1; ++i)
                cells_[static_cast<size_t>(j) * nx_ + i].push_back(t);
    }
}

std::vector<SimplexId> BucketIndex::toplexes_in_box(double x0, double y0,
                                                    double x1, double y1) const {
    std::vector<SimplexId> out;
    int i0 = std::clamp(static_cast<int>((x0 - bx0_) / sx_), 0, nx_ - 1);
    int i1 = std::clamp(static_cast<int>((x1 - bx0_) / sx_), 0, nx_ - 1);
    int j0 = std::clamp(static_cast<int>((y0 - by0_) / sy_), 0, ny_ - 1);
    int j1 = std::clamp(static_cast<int>((y1 - by0_) / sy_), 0, ny_ - 1);
    // Point-sized queries touch a handful of buckets; dedup by scanning the
    // output instead of clearing a complex-sized bitmap per query.
    bool small = (i1 - i0 + 1) * (j1 - j0 + 1) <= 4;
    std::vector<char> seen;
    if (!small) seen.assign(K_.size(), 0);
    for (int j = j0; j <= j1; ++j)
        for (int i = i0; i <= i1; ++i)
            for (SimplexId t : cells_[static_cast<size_t>(j) * nx_ + i]) {
                const auto& b = boxes_[t];
                if (b[2] < x0 || b[0] > x1 || b[3] < y0 || b[1] > y1) continue;
                if (small) {
                    if (std::find(out.begin(), out.end(), t) != out.end()) continue;
                } else {
                    if (seen[t]) continue;
                    seen[t] = 1;
                }
                out.push_back(t);
            }
    return out;
}

std::vector<SimplexId> BucketIndex::toplexes_near(const Pt& p) const {
    double x = to_double(p.x), y = to_double(p.y);
    double pad = 1e-9 * (1.0 + std::abs(x) + std::abs(y));
    return toplexes_in_box(x - pad, y - pad, x + pad, y + pad);
}

// --- convexity engine -------------------------------------------------------

ConvexityEngine::ConvexityEngine(const SimplicialComplex& K) : K_(K), index_(K) {
    if (K_.has_geometry() && K_.size() > 0) {
        SimplexSet all = K_.full_set();
        if (!all.empty()) solid_convex_ = region_in_complex(build_region(K_, all));

        // Integer-scaled coordinates, when the common denominator stays small.
        using boost::multiprecision::cpp_int;
        cpp_int lcm = 1;
        bool ok = true;
        auto fold = [&](const Rat& v) {
            cpp_int d = boost::multiprecision::denominator(v);
            lcm = boost::multiprecision::lcm(lcm, d);
            if (lcm > 1000000) ok = false;
        };
        for (int v = 0; ok && v < K_.vertex_count(); ++v) {
            fold(K_.coord(v).x);
            fold(K_.coord(v).y);
        }
        if (ok) {
            ix_.resize(static_cast<size_t>(K_.vertex_count()));
            iy_.resize(static_cast<size_t>(K_.vertex_count()));
            for (int v = 0; ok && v < K_.vertex_count(); ++v) {
                Rat sx = K_.coord(v).x * lcm, sy = K_.coord(v).y * lcm;
                cpp_int nx = boost::multiprecision::numerator(sx);
                cpp_int ny = boost::multiprecision::numerator(sy);
                if (boost::multiprecision::abs(nx) > 10000000 ||
                    boost::multiprecision::abs(ny) > 10000000) {
                    ok = false;
                    break;
                }
                ix_[static_cast<size_t>(v)] = static_cast<long long>(nx);
                iy_[static_cast<size_t>(v)] = static_cast<long long>(ny);
            }
            int_ok_ = ok;
        }
    }
}

namespace {

std::array<double, 4> region_box(const ConvRegion& r) {
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (const Pt& p : r.hull) {
        double x = to_double(p.x), y = to_double(p.y);
        x0 = std::min(x0, x); x1 = std::max(x1, x);
        y0 = std::min(y0, y); y1 = std::max(y1, y);
    }
    double px = (x1 - x0 + 1.0) * 1e-12, py = (y1 - y0 + 1.0) * 1e-12;
    return {x0 - px, y0 - py, x1 + px, y1 + py};
}

}  // namespace

bool ConvexityEngine::region_in_complex(const ConvRegion& r) const {
    auto b = region_box(r);
    auto tops = index_.toplexes_in_box(b[0], b[1], b[2], b[3]);
    switch (r.kind) {
        case ConvRegion::Kind::Polygon: {
            Rat target = polygon_area2(r.hull);
            Rat sum = 0;
            for (SimplexId t : tops) {
                if (K_.dim(t) != 2) continue;
                const auto& vs = K_.vertices(t);
                Polygon tri{K_.coord(vs[0]), K_.coord(vs[1]), K_.coord(vs[2])};
                if (polygon_area2(tri) < 0) std::swap(tri[1], tri[2]);
                Polygon ov = clip_convex(tri, r.hull);
                if (ov.size() >= 3) sum += polygon_area2(ov);
            }
            return sum == target;
        }
        case ConvRegion::Kind::Segment: {
            const Pt& A = r.hull[0];
            const Pt& B = r.hull[1];
            std::vector<std::pair<Rat, Rat>> ivs;
            for (SimplexId t : tops) {
                const auto& vs = K_.vertices(t);
                if (K_.dim(t) == 2) {
                    Polygon tri{K_.coord(vs[0]), K_.coord(vs[1]), K_.coord(vs[2])};
                    if (polygon_area2(tri) < 0) std::swap(tri[1], tri[2]);
                    auto c = clip_segment(A, B, tri);
                    if (c && c->first < c->second) ivs.emplace_back(c->first, c->second);
                } else if (K_.dim(t) == 1) {
                    const Pt& p = K_.coord(vs[0]);
                    const Pt& q = K_.coord(vs[1]);
                    if (collinear(A, B, p) && collinear(A, B, q)) {
                        Rat up = line_param(A, B, p), uq = line_param(A, B, q);
                        if (up > uq) std::swap(up, uq);
                        Rat lo = std::max(up, Rat(0)), hi = std::min(uq, Rat(1));
                        if (lo < hi) ivs.emplace_back(lo, hi);
                    }
                }
            }
            std::sort(ivs.begin(), ivs.end());
            Rat reach = 0;
            for (const auto& [lo, hi] : ivs) {
                if (lo > reach) return false;
                if (hi > reach) reach = hi;
            }
            return reach >= 1;
        }
        case ConvRegion::Kind::Point: {
            const Pt& P = r.hull[0];
            for (SimplexId t : tops) {
                const auto& vs = K_.vertices(t);
                if (K_.dim(t) == 2) {
                    if (point_in_closed_triangle(K_.coord(vs[0]), K_.coord(vs[1]),
                                                 K_.coord(vs[2]), P))
                        return true;
                } else if (K_.dim(t) == 1) {
                    if (on_segment(K_.coord(vs[0]), K_.coord(vs[1]), P)) return true;
                } else if (K_.coord(vs[0]) == P) {
                    return true;
                }
            }
            return false;
        }
    }
    return false;
}

SimplexSet ConvexityEngine::grow_once(const SimplexSet& D, bool* escaped) {
    *escaped = false;

    // Integer hull of D's vertices (CCW vertex ids) for exact int64 tests.
    bool fast = int_ok_;
    std::vector<int> hid;
    if (fast) {
        std::vector<int> vids;
        std::vector<char> seenv(static_cast<size_t>(K_.vertex_count()), 0);
        D.for_each([&](SimplexId s) {
            for (int v : K_.vertices(s))
                if (!seenv[static_cast<size_t>(v)]) {
                    seenv[static_cast<size_t>(v)] = 1;
                    vids.push_back(v);
                }
        });
        std::sort(vids.begin(), vids.end(), [&](int a, int bq) {
            return ix_[a] != ix_[bq] ? ix_[a] < ix_[bq] : iy_[a] < iy_[bq];
        });
        auto cross3 = [&](int a, int bq, int c) {
            return (ix_[bq] - ix_[a]) * (iy_[c] - iy_[a]) -
                   (iy_[bq] - iy_[a]) * (ix_[c] - ix_[a]);
        };
        size_t n = vids.size();
        std::vector<int> ch(2 * n);
        size_t k = 0;
        for (size_t i = 0; i < n; ++i) {  // lower then upper chain, strict turns
            while (k >= 2 && cross3(ch[k - 2], ch[k - 1], vids[i]) <= 0) --k;
            ch[k++] = vids[i];
        }
        for (size_t i = n - 1, lo = k + 1; i-- > 0;) {
            while (k >= lo && cross3(ch[k - 2], ch[k - 1], vids[i]) <= 0) --k;
            ch[k++] = vids[i];
        }
        ch.resize(k ? k - 1 : 0);
        hid = std::move(ch);
        if (hid.size() < 3 || hid.size() > 62) fast = false;
    }

    // Hull-only region; boundary attainment traces cost |D| x hull-size exact
    // work per round, so they are filled only if some cell actually reaches
    // the rational fallback.
    ConvRegion r;
    if (fast) {
        r.kind = ConvRegion::Kind::Polygon;
        r.hull.reserve(hid.size());
        for (int v : hid) r.hull.push_back(K_.coord(v));
    } else {
        r = detail::build_region_hull(K_, D);
    }
    bool traced = false;
    auto full_region = [&]() -> const ConvRegion& {
        if (!traced) {
            detail::fill_region_traces(K_, D, r);
            traced = true;
        }
        return r;
    };

    if (!solid_convex_ && !region_in_complex(r)) {
        *escaped = true;
        return D;
    }
    auto b = region_box(r);
    auto tops = index_.toplexes_in_box(b[0], b[1], b[2], b[3]);
    SimplexSet next = K_.make_set();
    bool poly = r.kind == ConvRegion::Kind::Polygon;

    // Lazy vertex classification against the hull: strictly inside cells are
    // accepted outright; a cell whose vertices share an outside half-plane of
    // one hull edge is rejected; triangles left over are settled by an exact
    // integer separating-axis test. Only degenerate boundary contacts of
    // edges/vertices reach the rational fallback.
    std::vector<char> cls;        // 0 unknown, 1 strictly in, 2 on boundary, 3 out
    std::vector<uint64_t> omask;  // for class 3: hull edges separating it
    if (fast) {
        cls.assign(static_cast<size_t>(K_.vertex_count()), 0);
        omask.assign(static_cast<size_t>(K_.vertex_count()), 0);
    }
    auto icross = [&](int a, int bq, long long px, long long py) {
        return (ix_[bq] - ix_[a]) * (py - iy_[a]) - (iy_[bq] - iy_[a]) * (px - ix_[a]);
    };
    auto classify = [&](int v) {
        char& c = cls[static_cast<size_t>(v)];
        if (c) return c;
        uint64_t m = 0;
        bool onb = false;
        size_t h = hid.size();
        for (size_t i = 0; i < h; ++i) {
            long long cr = icross(hid[i], hid[(i + 1) % h], ix_[v], iy_[v]);
            if (cr < 0) m |= uint64_t(1) << i;
            else if (cr == 0) onb = true;
        }
        if (m) {
            omask[static_cast<size_t>(v)] = m;
            c = 3;
        } else {
            c = onb ? 2 : 1;
        }
        return c;
    };
    auto tri_meets_hull = [&](const std::vector<int>& vs) {
        // Positive-area overlap of closed triangle and hull iff no edge line
        // of either polygon separates them (convex SAT).
        int a = vs[0], bq = vs[1], c = vs[2];
        if (icross(a, bq, ix_[c], iy_[c]) < 0) std::swap(bq, c);
        int tv[3] = {a, bq, c};
        for (int i = 0; i < 3; ++i) {
            int p = tv[i], q = tv[(i + 1) % 3];
            bool sep = true;
            for (int hv : hid)
                if (icross(p, q, ix_[hv], iy_[hv]) > 0) {
                    sep = false;
                    break;
                }
            if (sep) return false;
        }
        size_t h = hid.size();
        for (size_t i = 0; i < h; ++i) {
            int p = hid[i], q = hid[(i + 1) % h];
            bool sep = true;
            for (int t : tv)
                if (icross(p, q, ix_[t], iy_[t]) > 0) {
                    sep = false;
                    break;
                }
            if (sep) return false;
        }
        return true;
    };

    // Integer boundary traces: 1-D hull of attained parameters per hull edge,
    // in the unnormalized parameter s(p) = (p - a) . (b - a) along edge (a, b).
    // Mirrors fill_region_traces: only vertex and edge cells of D lying on the
    // hull boundary contribute attained points / open intervals.
    struct ITrace {
        long long lo = 0, hi = 0;
        bool lo_c = false, hi_c = false, any = false;
        void extend(long long a2, bool ac, long long b2, bool bc) {
            if (!any) {
                any = true;
                lo = a2; lo_c = ac;
                hi = b2; hi_c = bc;
                return;
            }
            if (a2 < lo) { lo = a2; lo_c = ac; }
            else if (a2 == lo) lo_c = lo_c || ac;
            if (b2 > hi) { hi = b2; hi_c = bc; }
            else if (b2 == hi) hi_c = hi_c || bc;
        }
        bool empty() const { return !any || (lo == hi && !(lo_c && hi_c)); }
        bool contains(long long s) const {
            if (empty()) return false;
            if (s < lo || s > hi) return false;
            if (s == lo && !lo_c) return false;
            if (s == hi && !hi_c) return false;
            return true;
        }
    };
    std::vector<ITrace> itr;
    bool itr_built = false;
    auto sval = [&](size_t e, long long px, long long py) {
        int a = hid[e], b2 = hid[(e + 1) % hid.size()];
        return (px - ix_[a]) * (ix_[b2] - ix_[a]) + (py - iy_[a]) * (iy_[b2] - iy_[a]);
    };
    auto edge_len2 = [&](size_t e) {
        int a = hid[e], b2 = hid[(e + 1) % hid.size()];
        return sval(e, ix_[b2], iy_[b2]);
    };
    // Lattice point on the closed hull edge e?
    auto on_edge = [&](size_t e, int v) {
        int a = hid[e], b2 = hid[(e + 1) % hid.size()];
        if (icross(a, b2, ix_[v], iy_[v]) != 0) return false;
        long long s = sval(e, ix_[v], iy_[v]);
        return 0 <= s && s <= edge_len2(e);
    };
    auto build_itraces = [&]() {
        if (itr_built) return;
        itr_built = true;
        size_t h = hid.size();
        itr.assign(h, {});
        D.for_each([&](SimplexId s) {
            const auto& lvs = K_.vertices(s);
            if (lvs.size() > 2) return;
            // Only hull-boundary vertices can lie on a hull edge.
            for (int v : lvs)
                if (classify(v) != 2) return;
            for (size_t e = 0; e < h; ++e) {
                if (lvs.size() == 1) {
                    if (on_edge(e, lvs[0])) {
                        long long t = sval(e, ix_[lvs[0]], iy_[lvs[0]]);
                        itr[e].extend(t, true, t, true);
                    }
                } else if (on_edge(e, lvs[0]) && on_edge(e, lvs[1])) {
                    long long t0 = sval(e, ix_[lvs[0]], iy_[lvs[0]]);
                    long long t1 = sval(e, ix_[lvs[1]], iy_[lvs[1]]);
                    if (t0 > t1) std::swap(t0, t1);
                    itr[e].extend(t0, false, t1, false);
                }
            }
        });
    };
    // Hull-boundary vertex cell: in co(D) iff its point is attained.
    auto vertex_attained = [&](int v) {
        build_itraces();
        size_t h = hid.size();
        for (size_t e = 0; e < h; ++e)
            if (on_edge(e, v) && itr[e].contains(sval(e, ix_[v], iy_[v]))) return true;
        return false;
    };
    // Open edge cell (u, w) against the region: exact integer clipping.
    auto edge_meets = [&](int u, int w) -> bool {
        using I128 = __int128;
        size_t h = hid.size();
        // Collinear with a hull edge line: the hull meets that line exactly in
        // the hull edge, so the decision reduces to a 1-D trace overlap.
        for (size_t e = 0; e < h; ++e) {
            int a = hid[e], b2 = hid[(e + 1) % h];
            if (icross(a, b2, ix_[u], iy_[u]) != 0) continue;
            if (icross(a, b2, ix_[w], iy_[w]) != 0) continue;
            build_itraces();
            const ITrace& T = itr[e];
            if (T.empty()) return false;
            long long s0 = sval(e, ix_[u], iy_[u]);
            long long s1 = sval(e, ix_[w], iy_[w]);
            if (s0 > s1) std::swap(s0, s1);
            // (s0, s1) open  ∩  [0, L] closed  ∩  trace.
            long long lo = s0, hi = s1;
            bool lo_c = false, hi_c = false;
            auto cut_lo = [&](long long v2, bool c) {
                if (v2 > lo) { lo = v2; lo_c = c; }
                else if (v2 == lo) lo_c = lo_c && c;
            };
            auto cut_hi = [&](long long v2, bool c) {
                if (v2 < hi) { hi = v2; hi_c = c; }
                else if (v2 == hi) hi_c = hi_c && c;
            };
            cut_lo(0, true); cut_hi(edge_len2(e), true);
            cut_lo(T.lo, T.lo_c); cut_hi(T.hi, T.hi_c);
            return lo < hi || (lo == hi && lo_c && hi_c);
        }
        // General position: clip t in [0, 1] along u + t (w - u) by the hull
        // half-planes cr >= 0; bounds are exact fractions ln/ld, hn/hd.
        long long ln = 0, ld = 1, hn = 1, hd = 1;
        for (size_t e = 0; e < h; ++e) {
            int a = hid[e], b2 = hid[(e + 1) % h];
            long long cu = icross(a, b2, ix_[u], iy_[u]);
            long long cw = icross(a, b2, ix_[w], iy_[w]);
            if (cu >= 0 && cw >= 0) continue;
            if (cu < 0 && cw < 0) return false;
            long long tn = cu, td = cu - cw;  // crossing at t* = cu / (cu - cw)
            if (td < 0) { tn = -tn; td = -td; }
            if (cu < 0) {  // entering: t >= t*
                if (static_cast<I128>(tn) * ld > static_cast<I128>(ln) * td) { ln = tn; ld = td; }
            } else {  // leaving: t <= t*
                if (static_cast<I128>(tn) * hd < static_cast<I128>(hn) * td) { hn = tn; hd = td; }
            }
        }
        I128 lv = static_cast<I128>(ln) * hd, hv = static_cast<I128>(hn) * ld;
        if (lv > hv) return false;
        // Positive length not along any hull edge line crosses the interior,
        // and the open hull lies inside the region.
        if (lv < hv) return true;
        // Single-point touch at t = ln / ld; endpoints of the open cell miss.
        if (ln == 0 || ln == ld) return false;
        build_itraces();
        for (size_t e = 0; e < h; ++e) {
            int a = hid[e], b2 = hid[(e + 1) % h];
            long long cu = icross(a, b2, ix_[u], iy_[u]);
            long long cw = icross(a, b2, ix_[w], iy_[w]);
            if (static_cast<I128>(cu) * ld + static_cast<I128>(ln) * (cw - cu) != 0) continue;
            const ITrace& T = itr[e];
            long long su = sval(e, ix_[u], iy_[u]);
            long long sw = sval(e, ix_[w], iy_[w]);
            I128 sp = static_cast<I128>(su) * ld + static_cast<I128>(ln) * (sw - su);
            if (sp < 0 || sp > static_cast<I128>(edge_len2(e)) * ld) continue;
            if (T.empty()) continue;
            I128 tl = static_cast<I128>(T.lo) * ld, th = static_cast<I128>(T.hi) * ld;
            if (sp < tl || sp > th) continue;
            if (sp == tl && !T.lo_c) continue;
            if (sp == th && !T.hi_c) continue;
            return true;
        }
        return false;
    };

    std::vector<char> vclass;  // rational fallback cache: 0 unknown, 1 in, 2 not
    if (poly && !fast) vclass.assign(static_cast<size_t>(K_.vertex_count()), 0);
    auto strictly_in = [&](int v) {
        char& c = vclass[static_cast<size_t>(v)];
        if (c == 0) c = point_strictly_in_convex(r.hull, K_.coord(v)) ? 1 : 2;
        return c == 1;
    };

    // Growth is monotone: every closed cell of D lies in the hull of D's
    // vertices, so members of D are carried over without re-testing.
    std::vector<char> tested(K_.size(), 0);
    D.for_each([&](SimplexId s) {
        next.insert(s);
        tested[s] = 1;
    });
    auto consider = [&](SimplexId s) {
        if (tested[s]) return;
        tested[s] = 1;
        if (fast) {
            const auto& vs = K_.vertices(s);
            uint64_t andm = ~uint64_t(0);
            for (int v : vs) {
                char c = classify(v);
                if (c == 1) {
                    next.insert(s);
                    return;
                }
                andm &= c == 3 ? omask[static_cast<size_t>(v)] : 0;
            }
            if (andm) return;
            if (vs.size() == 3) {
                if (tri_meets_hull(vs)) next.insert(s);
                return;
            }
            if (vs.size() == 2) {
                if (edge_meets(vs[0], vs[1])) next.insert(s);
                return;
            }
            // Single vertex on the hull boundary (strictly-in was accepted
            // and strictly-out rejected above).
            if (vertex_attained(vs[0])) next.insert(s);
            return;
        } else if (poly) {
            for (int v : K_.vertices(s))
                if (strictly_in(v)) {
                    next.insert(s);
                    return;
                }
        }
        if (cell_intersects_region(K_, full_region(), s)) next.insert(s);
    };
    for (SimplexId t : tops) {
        consider(t);
        for (SimplexId f : K_.proper_faces(t)) consider(f);
    }
    return next;
}

SimplexSet ConvexityEngine::co(const SimplexSet& A) {
    if (A.empty()) throw std::invalid_argument("co: empty input set");
    if (!K_.has_geometry()) throw std::invalid_argument("co: complex has no geometry");
    auto it = cache_.find(A);
    if (it != cache_.end()) return it->second;

    SimplexSet D = A;
    for (size_t round = 0; round <= K_.size(); ++round) {
        bool escaped = false;
        SimplexSet next = grow_once(D, &escaped);
        if (escaped)
            throw std::runtime_error("co: convex hull escapes the polytope of the complex");
        if (next == D) {
            // Bound the memo: long sweeps reuse the engine across many levels.
            if (cache_.size() >= 200000) cache_.clear();
            cache_.emplace(A, D);
            return D;
        }
        D = std::move(next);
    }
    throw std::logic_error("co: fixed point not reached");  // unreachable: growth is monotone
}

SimplexSet co(const SimplicialComplex& K, const SimplexSet& A) {
    ConvexityEngine eng(K);
    return eng.co(A);
}

bool solid_is_convex(const SimplicialComplex& K, const SimplexSet& C) {
    if (C.empty()) return true;
    ConvRegion r = build_region(K, C);
    ConvexityEngine eng(K);
    if (!eng.region_in_complex(r)) return false;
    for (SimplexId s = 0; s < K.size(); ++s)
        if (!C.contains(s) && cell_intersects_region(K, r, s)) return false;
    return true;
}

}  // namespace mdyn
