#include "morsedyn/homology.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace mdyn {

ChainZ2 chain_xor(const ChainZ2& a, const ChainZ2& b) {
    ChainZ2 out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) out.push_back(a[i++]);
        else if (b[j] < a[i]) out.push_back(b[j++]);
        else { ++i; ++j; }
    }
    out.insert(out.end(), a.begin() + static_cast<long>(i), a.end());
    out.insert(out.end(), b.begin() + static_cast<long>(j), b.end());
    return out;
}

void AbstractComplex::verify() const {
    for (size_t c = 0; c < size(); ++c) {
        ChainZ2 dd;
        for (int f : boundary[c]) dd = chain_xor(dd, boundary[static_cast<size_t>(f)]);
        if (!dd.empty()) throw std::logic_error("chain complex violates dd = 0");
    }
}

AbstractComplex chain_complex_pair(const SimplicialComplex& K, const SimplexSet& A,
                                   const SimplexSet& B) {
    if (!is_closed(K, A) || !is_closed(K, B))
        throw std::invalid_argument("chain_complex_pair: sets must be closed");
    if (!B.subset_of(A)) throw std::invalid_argument("chain_complex_pair: B not inside A");
    std::vector<int> cell_of(K.size(), -1);
    AbstractComplex X;
    A.for_each([&](SimplexId s) {
        if (B.contains(s)) return;
        cell_of[s] = static_cast<int>(X.dim.size());
        X.dim.push_back(K.dim(s));
        X.max_dim = std::max(X.max_dim, K.dim(s));
        X.boundary.emplace_back();
    });
    A.for_each([&](SimplexId s) {
        int c = cell_of[s];
        if (c < 0) return;
        ChainZ2& b = X.boundary[static_cast<size_t>(c)];
        for (SimplexId f : K.facets(s))
            if (cell_of[f] >= 0) b.push_back(cell_of[f]);
        std::sort(b.begin(), b.end());
    });
    return X;
}

AbstractComplex chain_complex(const SimplicialComplex& K, const SimplexSet& A) {
    return chain_complex_pair(K, A, K.make_set());
}

namespace {

// Echelonizes the boundary columns of the k-cells of X. When `kernel` is
// given, also tracks the combination chains and appends a kernel basis.
size_t reduce_boundaries(const AbstractComplex& X, int k, std::vector<ChainZ2>* echelon,
                         std::vector<ChainZ2>* kernel) {
    std::unordered_map<int, size_t> owner;  // pivot cell -> echelon column
    std::vector<ChainZ2> combo;
    size_t rank = 0;
    for (size_t c = 0; c < X.size(); ++c) {
        if (X.dim[c] != k) continue;
        ChainZ2 r = X.boundary[c];
        ChainZ2 v{static_cast<int>(c)};
        while (!r.empty()) {
            auto it = owner.find(r.back());
            if (it == owner.end()) break;
            r = chain_xor(r, (*echelon)[it->second]);
            if (kernel) v = chain_xor(v, combo[it->second]);
        }
        if (r.empty()) {
            if (kernel) kernel->push_back(std::move(v));
        } else {
            owner.emplace(r.back(), echelon->size());
            echelon->push_back(std::move(r));
            if (kernel) combo.push_back(std::move(v));
            ++rank;
        }
    }
    return rank;
}

}  // namespace

std::vector<size_t> betti(const AbstractComplex& X) {
    if (X.max_dim < 0) return {};
    std::vector<size_t> cells(static_cast<size_t>(X.max_dim) + 1, 0);
    for (int d : X.dim) ++cells[static_cast<size_t>(d)];
    std::vector<size_t> rank(static_cast<size_t>(X.max_dim) + 2, 0);
    for (int k = 0; k <= X.max_dim; ++k) {
        std::vector<ChainZ2> ech;
        rank[static_cast<size_t>(k)] = reduce_boundaries(X, k, &ech, nullptr);
    }
    std::vector<size_t> b(static_cast<size_t>(X.max_dim) + 1, 0);
    for (int k = 0; k <= X.max_dim; ++k)
        b[static_cast<size_t>(k)] = cells[static_cast<size_t>(k)] -
                                    rank[static_cast<size_t>(k)] -
                                    rank[static_cast<size_t>(k) + 1];
    return b;
}

std::vector<size_t> betti(const SimplicialComplex& K, const SimplexSet& A) {
    return betti(chain_complex(K, A));
}

std::vector<size_t> relative_betti(const SimplicialComplex& K, const SimplexSet& A,
                                   const SimplexSet& B) {
    return betti(chain_complex_pair(K, A, B));
}

MatZ2 MatZ2::zero(size_t r, size_t c) {
    MatZ2 m;
    m.rows = r;
    m.cols = c;
    m.col.assign(c, std::vector<uint8_t>(r, 0));
    return m;
}

MatZ2 MatZ2::identity(size_t n) {
    MatZ2 m = zero(n, n);
    for (size_t i = 0; i < n; ++i) m.col[i][i] = 1;
    return m;
}

MatZ2 mat_mul(const MatZ2& a, const MatZ2& b) {
    if (a.cols != b.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    MatZ2 m = MatZ2::zero(a.rows, b.cols);
    for (size_t j = 0; j < b.cols; ++j)
        for (size_t i = 0; i < b.rows; ++i)
            if (b.col[j][i])
                for (size_t r = 0; r < a.rows; ++r) m.col[j][r] ^= a.col[i][r];
    return m;
}

size_t mat_rank(MatZ2 m) {
    size_t rank = 0;
    std::vector<long> pivot_col(m.rows, -1);
    for (size_t j = 0; j < m.cols; ++j) {
        auto& c = m.col[j];
        for (size_t r = m.rows; r-- > 0;) {
            if (!c[r]) continue;
            if (pivot_col[r] < 0) {
                pivot_col[r] = static_cast<long>(j);
                ++rank;
                break;
            }
            const auto& p = m.col[static_cast<size_t>(pivot_col[r])];
            for (size_t i = 0; i <= r; ++i) c[i] ^= p[i];
        }
    }
    return rank;
}

HomologyBasis::HomologyBasis(const AbstractComplex& X, int k) {
    std::vector<ChainZ2> cycles;
    {
        std::vector<ChainZ2> ech;
        reduce_boundaries(X, k, &ech, &cycles);
    }
    reduce_boundaries(X, k + 1, &bdry_echelon_, nullptr);
    for (size_t i = 0; i < bdry_echelon_.size(); ++i)
        bdry_by_pivot_.emplace(bdry_echelon_[i].back(), i);

    for (const ChainZ2& zc : cycles) {
        ChainZ2 z = zc;
        while (!z.empty()) {
            if (auto it = bdry_by_pivot_.find(z.back()); it != bdry_by_pivot_.end()) {
                z = chain_xor(z, bdry_echelon_[it->second]);
            } else if (auto ih = hom_by_pivot_.find(z.back()); ih != hom_by_pivot_.end()) {
                z = chain_xor(z, reps_[ih->second]);
            } else {
                break;
            }
        }
        if (!z.empty()) {
            hom_by_pivot_.emplace(z.back(), reps_.size());
            reps_.push_back(std::move(z));
        }
    }
}

std::vector<uint8_t> HomologyBasis::express(const AbstractComplex& X, const ChainZ2& cycle) const {
    std::vector<uint8_t> coords(reps_.size(), 0);
    ChainZ2 z = cycle;
    while (!z.empty()) {
        if (auto it = bdry_by_pivot_.find(z.back()); it != bdry_by_pivot_.end()) {
            z = chain_xor(z, bdry_echelon_[it->second]);
        } else if (auto ih = hom_by_pivot_.find(z.back()); ih != hom_by_pivot_.end()) {
            z = chain_xor(z, reps_[ih->second]);
            coords[ih->second] ^= 1;
        } else {
            break;
        }
    }
    if (!z.empty()) {
        // Not in the span of cycles: the input was not a cycle of X.
        (void)X;
        throw std::invalid_argument("HomologyBasis::express: chain is not a cycle");
    }
    return coords;
}

MatZ2 induced_map(const AbstractComplex& src_complex, const HomologyBasis& src,
                  const AbstractComplex& dst_complex, const HomologyBasis& dst,
                  const std::vector<int>& cell_map) {
    if (cell_map.size() != src_complex.size())
        throw std::invalid_argument("induced_map: cell map size mismatch");
    MatZ2 m = MatZ2::zero(dst.rank(), src.rank());
    for (size_t j = 0; j < src.rank(); ++j) {
        ChainZ2 image;
        for (int c : src.representative(j)) {
            int t = cell_map[static_cast<size_t>(c)];
            if (t < 0) throw std::invalid_argument("induced_map: unmapped cell");
            image = chain_xor(image, ChainZ2{t});
        }
        auto coords = dst.express(dst_complex, image);
        for (size_t i = 0; i < coords.size(); ++i) m.col[j][i] = coords[i];
    }
    return m;
}

}  // namespace mdyn
