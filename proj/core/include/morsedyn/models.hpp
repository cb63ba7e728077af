#ifndef MORSEDYN_MODELS_HPP
#define MORSEDYN_MODELS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "morsedyn/complex.hpp"
#include "morsedyn/mvf.hpp"
#include "morsedyn/rng.hpp"
#include "morsedyn/sampled_map.hpp"

namespace mdyn {

// Axis-aligned rectangle with exact rational corners.
struct Rect {
    Rat x0, y0, x1, y1;
};

// Uniform triangulated grid on the rectangle: (nx+1)*(ny+1) vertices,
// 2*nx*ny triangles, every square split along the lower-left to upper-right
// diagonal. Throws on a degenerate region or nx, ny < 1.
SimplicialComplex grid_mesh(const Rect& region, int nx, int ny);

// Planar Neimark-Sacker normal form, a rotation composed with a cubic radial
// term: N(x) = R(theta) * ((1 + alpha) x + |x|^2 * [[a, -b], [b, a]] x).
struct KuznetsovParams {
    double theta = 3.14159265358979323846 / 17.0;
    double alpha = 0.5;
    double a = -1.0;
    double b = 0.5;
};

std::pair<double, double> kuznetsov_map(const KuznetsovParams& p, double x,
                                        double y);

// Draws pairs (x, N(x + eps_X) + eps_Y) with x uniform in
// [-1,1]^2 and Gaussian coordinate noise; pairs whose y leaves the square
// are rejected and redrawn until `count` pairs are accepted. Returns the
// accepted pairs; *rejected (optional) receives the rejection count.
std::vector<SamplePair> sample_kuznetsov(const KuznetsovParams& p, double sigma_x,
                                         double sigma_y, size_t count, Rng& rng,
                                         size_t* rejected = nullptr);

// Lotka-Volterra predator-prey field:
//   dx/dt = x (1 - x/k) - a1 x y / (b + x)
//   dy/dt = a2 x y / (b + x) - g y
struct LVParams {
    double k = 3.5;
    double b = 1.0;
    double g = 0.5;
    double a1 = (1.0 - 1.0 / 3.5) * 2.0;  // (1 - 1/k)(b + 1)
    double a2 = 0.5 * 2.0;                // g (b + 1)
};

std::pair<double, double> lv_field(const LVParams& p, double x, double y);

// Evaluates the field at every mesh vertex. Throws when a vertex sits on the
// pole x = -b.
VectorCloud sample_lv_vectors(const LVParams& p, const SimplicialComplex& mesh);

}  // namespace mdyn

#endif
