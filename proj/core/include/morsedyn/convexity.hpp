#ifndef MORSEDYN_CONVEXITY_HPP
#define MORSEDYN_CONVEXITY_HPP

#include <unordered_map>
#include <vector>

#include "morsedyn/complex.hpp"

namespace mdyn {

// 1-D interval with end flags; empty() when degenerate-open.
struct Iv {
    Rat lo, hi;
    bool lo_closed = false, hi_closed = false;
    bool valid = false;

    bool empty() const {
        if (!valid) return true;
        if (lo < hi) return false;
        return !(lo == hi && lo_closed && hi_closed);
    }
    bool contains(const Rat& t) const {
        if (empty()) return false;
        if (t < lo || t > hi) return false;
        if (t == lo && !lo_closed) return false;
        if (t == hi && !hi_closed) return false;
        return true;
    }
    static Iv closed(Rat a, Rat b) { return {std::move(a), std::move(b), true, true, true}; }
    static Iv open(Rat a, Rat b) { return {std::move(a), std::move(b), false, false, true}; }
    static Iv point(Rat a) { Rat b = a; return {std::move(a), std::move(b), true, true, true}; }
};

Iv intersect(const Iv& a, const Iv& b);

// The convex hull of the solid |D| of a set of simplices: the interior of the
// closed hull plus, on each boundary face, the attained convex sub-interval.
// Open cells do not attain their endpoints, which is what distinguishes
// conv|D| from the closed polygon spanned by the vertices of cl D.
struct ConvRegion {
    enum class Kind { Point, Segment, Polygon };
    Kind kind;
    Polygon hull;               // CCW polygon, or 2 points (segment), or 1 (point)
    std::vector<Iv> boundary;   // attained trace per hull edge (1 entry for Segment)
};

ConvRegion build_region(const SimplicialComplex& K, const SimplexSet& D);

// Open cell of s meets the region.
bool cell_intersects_region(const SimplicialComplex& K, const ConvRegion& r, SimplexId s);

// Spatial index used to prune candidate simplices and toplexes by bounding box.
class BucketIndex {
public:
    explicit BucketIndex(const SimplicialComplex& K);
    // Toplexes whose bbox overlaps the query box (conservative superset).
    std::vector<SimplexId> toplexes_in_box(double x0, double y0, double x1, double y1) const;
    std::vector<SimplexId> toplexes_near(const Pt& p) const;

private:
    const SimplicialComplex& K_;
    double bx0_, by0_, bx1_, by1_;
    int nx_, ny_;
    double sx_, sy_;
    std::vector<std::vector<SimplexId>> cells_;
    std::vector<std::array<double, 4>> boxes_;
};

// Geometric queries against one complex; caches co results per input set.
class ConvexityEngine {
public:
    explicit ConvexityEngine(const SimplicialComplex& K);

    const SimplicialComplex& complex() const { return K_; }
    const BucketIndex& index() const { return index_; }

    // Smallest C >= A whose solid is convex, by fixed-point growth.
    // Throws when the hull escapes |K| or A is empty / K non-geometric.
    SimplexSet co(const SimplexSet& A);

    // Closed hull of the region lies inside the polytope |K|.
    bool region_in_complex(const ConvRegion& r) const;

    void clear_cache() { cache_.clear(); }

private:
    SimplexSet grow_once(const SimplexSet& D, bool* escaped);

    const SimplicialComplex& K_;
    BucketIndex index_;
    // |K| itself is convex: hulls of subsets can never escape, so the
    // containment check inside the growth loop is skipped entirely.
    bool solid_convex_ = false;
    // Vertex coordinates scaled to a common integer grid (when the common
    // denominator is small); enables exact int64 orientation tests in the
    // growth loop's hot path.
    bool int_ok_ = false;
    std::vector<long long> ix_, iy_;
    std::unordered_map<SimplexSet, SimplexSet, SimplexSetHash> cache_;
};

SimplexSet co(const SimplicialComplex& K, const SimplexSet& A);

// Exhaustive-oracle-friendly check: |C| is a convex subset of the plane.
bool solid_is_convex(const SimplicialComplex& K, const SimplexSet& C);

}  // namespace mdyn

#endif
