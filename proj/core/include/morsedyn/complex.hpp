#ifndef MORSEDYN_COMPLEX_HPP
#define MORSEDYN_COMPLEX_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "morsedyn/geometry.hpp"
#include "morsedyn/simplex_set.hpp"

namespace mdyn {

// A finite simplicial complex viewed as a T0 space via its face poset.
// Simplex ids are assigned by (dimension, lexicographic vertex list), so id
// order is a linear extension of the face order: faces precede cofaces.
// Instances are immutable after construction.
class SimplicialComplex {
public:
    // Builds the face closure of a list of toplex vertex sets. coords may be
    // empty for an abstract complex; otherwise one point per vertex (1-D
    // inputs are embedded in the plane with y = 0).
    static SimplicialComplex build(std::vector<Pt> coords,
                                   const std::vector<std::vector<int>>& toplexes,
                                   int vertex_count = -1);

    size_t size() const { return verts_.size(); }
    int dim(SimplexId s) const { return static_cast<int>(verts_[s].size()) - 1; }
    int dim() const { return dim_; }
    const std::vector<int>& vertices(SimplexId s) const { return verts_[s]; }

    // Covering relations of the face order.
    const std::vector<SimplexId>& facets(SimplexId s) const { return facets_[s]; }
    const std::vector<SimplexId>& cofacets(SimplexId s) const { return cofacets_[s]; }
    // Transitive, proper faces / cofaces.
    const std::vector<SimplexId>& proper_faces(SimplexId s) const { return faces_all_[s]; }
    const std::vector<SimplexId>& proper_cofaces(SimplexId s) const { return cofaces_all_[s]; }

    bool is_toplex(SimplexId s) const { return cofacets_[s].empty(); }
    const std::vector<SimplexId>& toplexes() const { return toplexes_; }
    bool is_face(SimplexId a, SimplexId b) const;  // a is a face of b (a <= b)

    // Id lookup by sorted vertex list; -1 when absent.
    long find(const std::vector<int>& vertex_ids) const;

    bool has_geometry() const { return !coords_.empty(); }
    int vertex_count() const { return nverts_; }
    const Pt& coord(int vertex) const { return coords_[vertex]; }
    const std::vector<Pt>& coords() const { return coords_; }

    SimplexSet make_set() const { return SimplexSet(size()); }
    SimplexSet full_set() const;

    std::string label(SimplexId s) const;  // "0.1.4" style vertex list, for messages

private:
    int nverts_ = 0;
    int dim_ = 0;
    std::vector<Pt> coords_;
    std::vector<std::vector<int>> verts_;
    std::vector<std::vector<SimplexId>> facets_, cofacets_, faces_all_, cofaces_all_;
    std::vector<SimplexId> toplexes_;
    std::map<std::vector<int>, SimplexId> index_;
};

// --- Alexandrov-topology operations -----------------------------------------

// A plus all faces of its members (smallest closed superset).
SimplexSet closure(const SimplicialComplex& K, const SimplexSet& A);

// Upper set of s: s together with all its cofaces (the open star).
SimplexSet upper_set(const SimplicialComplex& K, SimplexId s);

bool is_closed(const SimplicialComplex& K, const SimplexSet& A);
bool is_open(const SimplicialComplex& K, const SimplexSet& A);

// { t : a <= t <= b }, empty when a is not a face of b.
SimplexSet interval(const SimplicialComplex& K, SimplexId a, SimplexId b);

// Fence-connected components of A under the face order restricted to A.
std::vector<SimplexSet> order_components(const SimplicialComplex& K, const SimplexSet& A);

// Closed under intermediate elements: s1 <= t <= s2 with s1,s2 in A forces t in A.
bool is_orderly_convex(const SimplicialComplex& K, const SimplexSet& A);

// As above but reports a witness triple (s1, t, s2) on failure.
bool is_orderly_convex(const SimplicialComplex& K, const SimplexSet& A,
                       std::array<SimplexId, 3>* witness);

// --- Mesh text format --------------------------------------------------------
// One record per line: "v x y" (or "v x" in 1-D), "t i j k", "e i j", "#" comment.
SimplicialComplex read_mesh(std::istream& in);
void write_mesh(std::ostream& out, const SimplicialComplex& K);

}  // namespace mdyn

#endif
