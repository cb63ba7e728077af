#ifndef MORSEDYN_NERVE_HPP
#define MORSEDYN_NERVE_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "morsedyn/complex.hpp"
#include "morsedyn/homology.hpp"

namespace mdyn {

// Order complex of a family of disjoint simplex sets under the face order:
// cells are the chains s_0 < s_1 < ... < s_k lying inside a single set.
// Nerve vertices are numbered 0..back_map.size()-1; cell vertex lists refer
// to nerve vertex ids.
struct OrderComplex {
    AbstractComplex cx;                      // cells = chains, with boundaries
    std::vector<std::vector<int>> chains;    // per cell, sorted nerve vertices
    std::vector<SimplexId> back_map;         // nerve vertex -> source simplex
    std::vector<int> part_label;             // nerve vertex -> owning set index

    size_t size() const { return cx.size(); }
    // Cell index of a chain given by sorted nerve vertex ids, or -1.
    int find_chain(const std::vector<int>& verts) const;
    // Nerve vertex carrying a source simplex, or -1.
    int vertex_of(SimplexId source) const;

private:
    friend OrderComplex morse_nerve(const SimplicialComplex&,
                                    const std::vector<SimplexSet>&);
    std::vector<int> vertex_of_;  // source simplex -> nerve vertex (-1 outside)
};

// Nerve of the disconnecting topology T_M: disjoint union, over the given
// sets, of the order complexes of the face order restricted to each set.
OrderComplex morse_nerve(const SimplicialComplex& K,
                         const std::vector<SimplexSet>& sets);

// Cell map of the inclusion N_i -> N_j induced by the identity on source
// simplices. Requires every set underlying N_i to be contained in a single
// set underlying N_j (refinement); throws with a witness otherwise.
std::vector<int> nerve_inclusion(const OrderComplex& ni, const OrderComplex& nj);

// Basis of the disconnecting topology T_M on the union of the sets: the
// traces M \cap st(s) of minimal Alexandrov neighborhoods on each set.
// Test-only; capped at 64 elements in the union. Sets are bit masks over
// `elements` (the sorted union).
struct TopologyBasis {
    std::vector<SimplexId> elements;  // sorted union of the sets
    std::vector<int> label;           // per element, owning set index
    std::vector<uint64_t> sets;       // basis members as masks over elements
};

TopologyBasis tm_basis(const SimplicialComplex& K,
                       const std::vector<SimplexSet>& sets);

// True when m is a union of basis sets (openness test in the generated
// topology).
bool tb_open(const TopologyBasis& b, uint64_t m);

// Connected components of the topology generated by the basis, as masks.
std::vector<uint64_t> tb_components(const TopologyBasis& b);

// Text dump: one line per cell, "dim: source-labels", for golden tests.
void write_order_complex(std::ostream& out, const SimplicialComplex& K,
                         const OrderComplex& n);

}  // namespace mdyn

#endif
