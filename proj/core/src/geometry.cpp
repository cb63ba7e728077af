#include "morsedyn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace mdyn {

Rat parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty numeric field");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Rat num = parse_rational(text.substr(0, slash));
        Rat den = parse_rational(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + text);
        return num / den;
    }
    size_t pos = 0;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        neg = text[pos] == '-';
        ++pos;
    }
    boost::multiprecision::cpp_int mantissa = 0;
    long exp10 = 0;
    bool any_digit = false;
    bool seen_dot = false;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c >= '0' && c <= '9') {
            mantissa = mantissa * 10 + (c - '0');
            if (seen_dot) --exp10;
            any_digit = true;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if (c == 'e' || c == 'E') {
            exp10 += std::stol(text.substr(pos + 1));
            pos = text.size() - 1;
        } else {
            throw std::invalid_argument("bad numeric literal: " + text);
        }
    }
    if (!any_digit) throw std::invalid_argument("bad numeric literal: " + text);
    Rat r(mantissa);
    if (exp10 > 0)
        r *= Rat(boost::multiprecision::pow(boost::multiprecision::cpp_int(10), exp10));
    else if (exp10 < 0)
        r /= Rat(boost::multiprecision::pow(boost::multiprecision::cpp_int(10), -exp10));
    return neg ? -r : r;
}

Rat rational_from_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite coordinate");
    if (v == 0.0) return Rat(0);
    int exp = 0;
    double m = std::frexp(v, &exp);  // v = m * 2^exp, |m| in [0.5, 1)
    auto mi = boost::multiprecision::cpp_int(static_cast<long long>(std::ldexp(m, 53)));
    exp -= 53;
    Rat r(mi);
    if (exp > 0)
        r *= Rat(boost::multiprecision::pow(boost::multiprecision::cpp_int(2), exp));
    else if (exp < 0)
        r /= Rat(boost::multiprecision::pow(boost::multiprecision::cpp_int(2), -exp));
    return r;
}

double to_double(const Rat& v) { return v.convert_to<double>(); }

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int orient(const Pt& p, const Pt& q, const Pt& r) {
    Rat det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

bool collinear(const Pt& p, const Pt& q, const Pt& r) { return orient(p, q, r) == 0; }

bool strictly_between(const Pt& p, const Pt& q, const Pt& x) {
    if (!collinear(p, q, x)) return false;
    Rat dot = (q.x - p.x) * (x.x - p.x) + (q.y - p.y) * (x.y - p.y);
    Rat len2 = (q.x - p.x) * (q.x - p.x) + (q.y - p.y) * (q.y - p.y);
    return dot > 0 && dot < len2;
}

bool on_segment(const Pt& p, const Pt& q, const Pt& x) {
    if (!collinear(p, q, x)) return false;
    Rat dot = (q.x - p.x) * (x.x - p.x) + (q.y - p.y) * (x.y - p.y);
    Rat len2 = (q.x - p.x) * (q.x - p.x) + (q.y - p.y) * (q.y - p.y);
    return dot >= 0 && dot <= len2;
}

Polygon convex_hull(std::vector<Pt> pts) {
    std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    size_t n = pts.size();
    if (n <= 1) return pts;
    if (n == 2) return pts;
    std::vector<Pt> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    size_t lower = k + 1;
    for (size_t i = n - 1; i-- > 0;) {
        while (k >= lower && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() == 2 && hull[0] == hull[1]) hull.resize(1);
    // All-collinear input collapses to the two extremes.
    if (hull.size() == 2) return hull;
    return hull;
}

Rat polygon_area2(const Polygon& poly) {
    Rat a = 0;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Pt& p = poly[i];
        const Pt& q = poly[(i + 1) % n];
        a += p.x * q.y - q.x * p.y;
    }
    return a;
}

bool point_in_convex(const Polygon& poly, const Pt& p) {
    if (poly.empty()) return false;
    if (poly.size() == 1) return poly[0] == p;
    if (poly.size() == 2) return on_segment(poly[0], poly[1], p);
    for (size_t i = 0; i < poly.size(); ++i)
        if (orient(poly[i], poly[(i + 1) % poly.size()], p) < 0) return false;
    return true;
}

bool point_strictly_in_convex(const Polygon& poly, const Pt& p) {
    if (poly.size() < 3) return false;
    for (size_t i = 0; i < poly.size(); ++i)
        if (orient(poly[i], poly[(i + 1) % poly.size()], p) <= 0) return false;
    return true;
}

Polygon clip_convex(const Polygon& subject, const Polygon& clip) {
    if (clip.size() < 3) return {};
    Polygon out = subject;
    for (size_t i = 0; i < clip.size() && !out.empty(); ++i) {
        const Pt& a = clip[i];
        const Pt& b = clip[(i + 1) % clip.size()];
        Polygon in;
        in.swap(out);
        size_t n = in.size();
        for (size_t j = 0; j < n; ++j) {
            const Pt& cur = in[j];
            const Pt& nxt = in[(j + 1) % n];
            int sc = orient(a, b, cur);
            int sn = orient(a, b, nxt);
            if (sc >= 0) out.push_back(cur);
            if ((sc > 0 && sn < 0) || (sc < 0 && sn > 0)) {
                // intersection of cur-nxt with the line a-b
                Rat num = (b.x - a.x) * (cur.y - a.y) - (b.y - a.y) * (cur.x - a.x);
                Rat den = (b.x - a.x) * (cur.y - nxt.y) - (b.y - a.y) * (cur.x - nxt.x);
                Rat t = num / den;
                out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
            }
        }
    }
    return out;
}

std::optional<std::pair<Rat, Rat>> clip_segment(const Pt& a, const Pt& b, const Polygon& poly) {
    if (poly.size() < 3) return std::nullopt;
    Rat t0 = 0, t1 = 1;
    for (size_t i = 0; i < poly.size(); ++i) {
        const Pt& p = poly[i];
        const Pt& q = poly[(i + 1) % poly.size()];
        // keep side: orient(p,q,x) >= 0
        Rat fa = (q.x - p.x) * (a.y - p.y) - (q.y - p.y) * (a.x - p.x);
        Rat fb = (q.x - p.x) * (b.y - p.y) - (q.y - p.y) * (b.x - p.x);
        Rat d = fb - fa;  // f(a + t(b-a)) = fa + t*d
        if (d == 0) {
            if (fa < 0) return std::nullopt;
            continue;
        }
        Rat t = -fa / d;
        if (d > 0) {  // entering
            if (t > t0) t0 = t;
        } else {  // leaving
            if (t < t1) t1 = t;
        }
        if (t0 > t1) return std::nullopt;
    }
    return std::make_pair(t0, t1);
}

bool point_in_closed_triangle(const Pt& a, const Pt& b, const Pt& c, const Pt& p) {
    int o = orient(a, b, c);
    if (o == 0) return on_segment(a, b, p) || on_segment(b, c, p) || on_segment(a, c, p);
    int s1 = orient(a, b, p), s2 = orient(b, c, p), s3 = orient(c, a, p);
    if (o < 0) { s1 = -s1; s2 = -s2; s3 = -s3; }
    return s1 >= 0 && s2 >= 0 && s3 >= 0;
}

bool point_in_open_triangle(const Pt& a, const Pt& b, const Pt& c, const Pt& p) {
    int o = orient(a, b, c);
    if (o == 0) return false;
    int s1 = orient(a, b, p), s2 = orient(b, c, p), s3 = orient(c, a, p);
    if (o < 0) { s1 = -s1; s2 = -s2; s3 = -s3; }
    return s1 > 0 && s2 > 0 && s3 > 0;
}

bool ray_enters_open_triangle(const Pt& a, const Pt& b, const Pt& c,
                              const Pt& anchor, const Pt& dir) {
    if (dir.x == 0 && dir.y == 0) return false;
    int o = orient(a, b, c);
    if (o == 0) return false;
    const Pt* v[3] = {&a, &b, &c};
    Pt moved{anchor.x + dir.x, anchor.y + dir.y};
    for (int i = 0; i < 3; ++i) {
        const Pt& p = *v[i];
        const Pt& q = *v[(i + 1) % 3];
        int at = orient(p, q, anchor);
        int ahead = orient(p, q, moved);
        if (o < 0) { at = -at; ahead = -ahead; }
        // f(t) = f(0) + t*(f(1)-f(0)); need f(t) > 0 for small t > 0
        if (at < 0) return false;
        if (at == 0 && ahead <= at) return false;
    }
    return true;
}

bool ray_enters_open_segment(const Pt& a, const Pt& b, const Pt& anchor, const Pt& dir) {
    if (dir.x == 0 && dir.y == 0) return false;
    Pt moved{anchor.x + dir.x, anchor.y + dir.y};
    // must stay on the line for small t: anchor and anchor+dir both collinear with a,b
    if (!collinear(a, b, anchor) || !collinear(a, b, moved)) return false;
    // parametrize by dot product along the segment
    Rat ex = b.x - a.x, ey = b.y - a.y;
    Rat len2 = ex * ex + ey * ey;
    if (len2 == 0) return false;
    Rat s0 = ex * (anchor.x - a.x) + ey * (anchor.y - a.y);
    Rat sd = ex * dir.x + ey * dir.y;
    // position s(t) = s0 + t*sd must be in (0, len2) for small t > 0
    if (s0 > 0 && s0 < len2) return true;
    if (s0 == 0) return sd > 0;
    if (s0 == len2) return sd < 0;
    return false;
}

double angle_to_line_deg(const Pt& a, const Pt& b, double vx, double vy) {
    double ex = to_double(b.x - a.x);
    double ey = to_double(b.y - a.y);
    double elen = std::hypot(ex, ey);
    double vlen = std::hypot(vx, vy);
    if (elen == 0 || vlen == 0) return 0.0;
    double cross = std::abs(ex * vy - ey * vx) / (elen * vlen);
    cross = std::min(1.0, std::max(0.0, cross));
    return std::asin(cross) * 180.0 / M_PI;
}

}  // namespace mdyn
