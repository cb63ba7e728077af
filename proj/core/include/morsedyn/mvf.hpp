#ifndef MORSEDYN_MVF_HPP
#define MORSEDYN_MVF_HPP

#include <iosfwd>
#include <vector>

#include "morsedyn/dynamics.hpp"

namespace mdyn {

// A combinatorial multivector field: a partition of the complex into
// orderly convex parts. Always constructed through validate_mvf.
struct MultivectorField {
    const SimplicialComplex* K = nullptr;
    std::vector<int> part_of;        // SimplexId -> part index
    std::vector<SimplexSet> parts;

    size_t size() const { return parts.size(); }
};

// Checks partition + orderly convexity; throws with a witness description.
MultivectorField validate_mvf(const SimplicialComplex& K, std::vector<SimplexSet> parts);

// Finest field: every simplex its own multivector.
MultivectorField singleton_mvf(const SimplicialComplex& K);

// F_V(s) = cl s  u  [s]_V. Every simplex is a fixed point.
CDS generated_system(const MultivectorField& V);

// Common refinement V n W (nonempty pairwise intersections).
MultivectorField intersect(const MultivectorField& V, const MultivectorField& W);

// Pullback along a continuous (order-preserving) simplex map f: K -> K'.
// f is given as the image id per simplex of K.
MultivectorField pullback(const SimplicialComplex& K, const std::vector<SimplexId>& f,
                          const MultivectorField& Vp);

// V refines W: every part of V lies inside one part of W.
bool inscribed(const MultivectorField& V, const MultivectorField& W);

// Per-vertex sampled vectors, index-aligned with mesh vertices.
struct VectorCloud {
    std::vector<double> vx, vy;

    size_t size() const { return vx.size(); }
};

// Combinatorial multivector field from a vector cloud (angle in degrees).
MultivectorField cvcmf(const SimplicialComplex& K, const VectorCloud& cloud, double alpha_deg);

// A Morse set consisting of the single multivector `part` is trivial when
// H(cl part, cl part - part) vanishes in every dimension (Z/2).
bool is_trivial_morse(const SimplicialComplex& K, const SimplexSet& part);

// --- text formats ---------------------------------------------------------------
// MVF dump: "part_id: id id ..." per part.
void write_mvf(std::ostream& out, const MultivectorField& V);
std::vector<SimplexSet> read_mvf_parts(std::istream& in, const SimplicialComplex& K);

// Vector cloud CSV: "px,py,vx,vy", row order = vertex id order.
void write_vector_cloud(std::ostream& out, const SimplicialComplex& K, const VectorCloud& c);
VectorCloud read_vector_cloud(std::istream& in);

}  // namespace mdyn

#endif
