#ifndef MORSEDYN_GEOMETRY_HPP
#define MORSEDYN_GEOMETRY_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

namespace mdyn {

// Exact rational scalar. All planar predicates in the library are computed
// exactly; coordinates enter either as exactly constructed fractions or by
// parsing decimal text, so there is no epsilon anywhere in the geometry.
using Rat = boost::multiprecision::cpp_rational;

struct Pt {
    Rat x;
    Rat y;

    bool operator==(const Pt& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Pt& o) const { return !(*this == o); }
};

// Parses a decimal literal ("-1.25", "3", "1e-3", "5/12") into an exact rational.
Rat parse_rational(const std::string& text);

// Exact conversion; every double is a dyadic rational.
Rat rational_from_double(double v);

double to_double(const Rat& v);

// Decimal text with enough digits to round-trip a double exactly.
std::string format_double(double v);

// Sign of the cross product (q-p) x (r-p): >0 left turn, 0 collinear.
int orient(const Pt& p, const Pt& q, const Pt& r);

bool collinear(const Pt& p, const Pt& q, const Pt& r);

// Strictly between p and q on their segment (collinearity required).
bool strictly_between(const Pt& p, const Pt& q, const Pt& x);

// On the closed segment [p, q].
bool on_segment(const Pt& p, const Pt& q, const Pt& x);

// Convex polygon, vertices in CCW order, no three consecutive collinear.
using Polygon = std::vector<Pt>;

// Monotone chain hull. Returns extreme points only, CCW. For degenerate
// input returns 1 (point) or 2 (segment endpoints) vertices.
Polygon convex_hull(std::vector<Pt> pts);

// Twice the signed area of a simple polygon.
Rat polygon_area2(const Polygon& poly);

// p inside or on the boundary of a CCW convex polygon.
bool point_in_convex(const Polygon& poly, const Pt& p);

// p strictly inside a CCW convex polygon (false on the boundary).
bool point_strictly_in_convex(const Polygon& poly, const Pt& p);

// Sutherland-Hodgman clip of an arbitrary convex polygon against another.
Polygon clip_convex(const Polygon& subject, const Polygon& clip);

// Clip segment a + t(b-a), t in [0,1], against a CCW convex polygon.
// Returns the parameter range kept, or nullopt when disjoint.
std::optional<std::pair<Rat, Rat>> clip_segment(const Pt& a, const Pt& b, const Polygon& poly);

// Barycentric-style membership in the closed/open triangle (a,b,c),
// orientation of the triangle may be either way.
bool point_in_closed_triangle(const Pt& a, const Pt& b, const Pt& c, const Pt& p);
bool point_in_open_triangle(const Pt& a, const Pt& b, const Pt& c, const Pt& p);

// True when the ray anchor + t*dir, t -> 0+, immediately enters the open
// triangle (a,b,c).  anchor may sit anywhere; dir must be nonzero.
bool ray_enters_open_triangle(const Pt& a, const Pt& b, const Pt& c,
                              const Pt& anchor, const Pt& dir);

// Same for the open segment (a,b).
bool ray_enters_open_segment(const Pt& a, const Pt& b, const Pt& anchor, const Pt& dir);

// Angle in degrees between vector v and the line through a,b (range [0,90]).
double angle_to_line_deg(const Pt& a, const Pt& b, const Pt& vx, const Pt& vy) = delete;
double angle_to_line_deg(const Pt& a, const Pt& b, double vx, double vy);

}  // namespace mdyn

#endif
