#ifndef MORSEDYN_HOMOLOGY_HPP
#define MORSEDYN_HOMOLOGY_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "morsedyn/complex.hpp"

namespace mdyn {

// Chain over Z/2: sorted list of cell indices.
using ChainZ2 = std::vector<int>;

// Symmetric difference (Z/2 sum) of two sorted chains.
ChainZ2 chain_xor(const ChainZ2& a, const ChainZ2& b);

// A finite Z/2 chain complex: cells with a dimension and a mod-2 boundary.
// Also models relative (quotient) complexes: boundaries simply omit the
// killed cells.
struct AbstractComplex {
    std::vector<int> dim;              // per cell
    std::vector<ChainZ2> boundary;     // per cell, indices of (dim-1)-cells
    int max_dim = -1;

    size_t size() const { return dim.size(); }
    // Checks boundary-of-boundary = 0; throws on violation.
    void verify() const;
};

// Chain complex of a closed set of simplices.
AbstractComplex chain_complex(const SimplicialComplex& K, const SimplexSet& A);

// Relative chain complex of the pair (A, B), B closed in A, both closed.
AbstractComplex chain_complex_pair(const SimplicialComplex& K, const SimplexSet& A,
                                   const SimplexSet& B);

// Betti numbers over Z/2, indices 0..max_dim (all zeros when no cells).
std::vector<size_t> betti(const AbstractComplex& X);

std::vector<size_t> betti(const SimplicialComplex& K, const SimplexSet& A);
std::vector<size_t> relative_betti(const SimplicialComplex& K, const SimplexSet& A,
                                   const SimplexSet& B);

// Dense Z/2 matrix, column-major.
struct MatZ2 {
    size_t rows = 0, cols = 0;
    std::vector<std::vector<uint8_t>> col;  // col[j] has length rows

    static MatZ2 zero(size_t r, size_t c);
    static MatZ2 identity(size_t n);
    bool operator==(const MatZ2& o) const { return rows == o.rows && col == o.col; }
};

MatZ2 mat_mul(const MatZ2& a, const MatZ2& b);
size_t mat_rank(MatZ2 m);

// Homology basis of H_k(X) with the bookkeeping needed to express arbitrary
// cycles in it (reduction against the boundary-image echelon).
class HomologyBasis {
public:
    HomologyBasis() = default;
    HomologyBasis(const AbstractComplex& X, int k);

    size_t rank() const { return reps_.size(); }
    const ChainZ2& representative(size_t i) const { return reps_[i]; }

    // Coordinates of a k-cycle in this basis; throws when the chain is not a
    // cycle of X or falls outside the computed homology (impossible for
    // genuine cycles).
    std::vector<uint8_t> express(const AbstractComplex& X, const ChainZ2& cycle) const;

private:
    std::vector<ChainZ2> reps_;          // echelonized homology representatives
    std::vector<ChainZ2> bdry_echelon_;  // echelon basis of im(boundary_{k+1})
    std::unordered_map<int, size_t> bdry_by_pivot_, hom_by_pivot_;
};

// Matrix of H_k(src) -> H_k(dst) induced by a cell map (dst index per src
// cell; -1 forbidden). The map must send cycles to cycles, e.g. an inclusion.
MatZ2 induced_map(const AbstractComplex& src_complex, const HomologyBasis& src,
                  const AbstractComplex& dst_complex, const HomologyBasis& dst,
                  const std::vector<int>& cell_map);

}  // namespace mdyn

#endif
