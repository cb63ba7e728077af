#include "morsedyn/models.hpp"

#include <cmath>
#include <stdexcept>

namespace mdyn {

SimplicialComplex grid_mesh(const Rect& region, int nx, int ny) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("grid_mesh: need nx, ny >= 1");
    if (region.x0 >= region.x1 || region.y0 >= region.y1)
        throw std::invalid_argument("grid_mesh: degenerate region");
    std::vector<Pt> coords;
    coords.reserve(static_cast<size_t>(nx + 1) * static_cast<size_t>(ny + 1));
    Rat dx = (region.x1 - region.x0) / nx;
    Rat dy = (region.y1 - region.y0) / ny;
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            coords.push_back({region.x0 + dx * i, region.y0 + dy * j});
    auto vid = [&](int i, int j) { return j * (nx + 1) + i; };
    std::vector<std::vector<int>> tris;
    tris.reserve(2 * static_cast<size_t>(nx) * static_cast<size_t>(ny));
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            // Diagonal from the lower-left to the upper-right corner.
            tris.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
            tris.push_back({vid(i, j), vid(i, j + 1), vid(i + 1, j + 1)});
        }
    return SimplicialComplex::build(std::move(coords), tris);
}

std::pair<double, double> kuznetsov_map(const KuznetsovParams& p, double x,
                                        double y) {
    double r2 = x * x + y * y;
    // (1 + alpha) x + |x|^2 [[a, -b], [b, a]] x
    double ux = (1.0 + p.alpha) * x + r2 * (p.a * x - p.b * y);
    double uy = (1.0 + p.alpha) * y + r2 * (p.b * x + p.a * y);
    double c = std::cos(p.theta), s = std::sin(p.theta);
    return {c * ux - s * uy, s * ux + c * uy};
}

std::vector<SamplePair> sample_kuznetsov(const KuznetsovParams& p, double sigma_x,
                                         double sigma_y, size_t count, Rng& rng,
                                         size_t* rejected) {
    std::vector<SamplePair> out;
    out.reserve(count);
    size_t rej = 0;
    while (out.size() < count) {
        double x1 = rng.uniform(-1.0, 1.0);
        double x2 = rng.uniform(-1.0, 1.0);
        double ex1 = sigma_x * rng.normal(), ex2 = sigma_x * rng.normal();
        double ey1 = sigma_y * rng.normal(), ey2 = sigma_y * rng.normal();
        auto [ny1, ny2] = kuznetsov_map(p, x1 + ex1, x2 + ex2);
        double y1 = ny1 + ey1, y2 = ny2 + ey2;
        if (y1 < -1.0 || y1 > 1.0 || y2 < -1.0 || y2 > 1.0) {
            ++rej;
            continue;
        }
        out.push_back({x1, x2, y1, y2});
    }
    if (rejected) *rejected = rej;
    return out;
}

std::pair<double, double> lv_field(const LVParams& p, double x, double y) {
    double denom = p.b + x;
    if (denom == 0.0) throw std::domain_error("lv_field: pole at x = -b");
    double coupling = x * y / denom;
    return {x * (1.0 - x / p.k) - p.a1 * coupling, p.a2 * coupling - p.g * y};
}

VectorCloud sample_lv_vectors(const LVParams& p, const SimplicialComplex& mesh) {
    if (!mesh.has_geometry())
        throw std::invalid_argument("sample_lv_vectors: mesh lacks geometry");
    VectorCloud c;
    c.vx.reserve(static_cast<size_t>(mesh.vertex_count()));
    c.vy.reserve(static_cast<size_t>(mesh.vertex_count()));
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        const Pt& pt = mesh.coord(v);
        auto [fx, fy] = lv_field(p, static_cast<double>(pt.x), static_cast<double>(pt.y));
        c.vx.push_back(fx);
        c.vy.push_back(fy);
    }
    return c;
}

}  // namespace mdyn
