#ifndef MORSEDYN_DYNAMICS_HPP
#define MORSEDYN_DYNAMICS_HPP

#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "morsedyn/complex.hpp"

namespace mdyn {

// A combinatorial multivalued map F on the simplices of one complex, viewed
// as the digraph G_F. Successor sets are deduplicated internally: thresholded
// sampled maps assign the same image to large families of simplices, so the
// dense regimes stay cheap to store and traverse.
class CombinatorialDynamicalSystem {
public:
    explicit CombinatorialDynamicalSystem(const SimplicialComplex& K)
        : K_(&K), pool_of_(K.size(), -1), empty_(K.size()) {}

    const SimplicialComplex& complex() const { return *K_; }
    size_t size() const { return pool_of_.size(); }

    void set_successors(SimplexId s, const SimplexSet& succ);
    void add_edge(SimplexId s, SimplexId t);

    const SimplexSet& successors(SimplexId s) const {
        int32_t p = pool_of_[s];
        return p < 0 ? empty_ : pools_[static_cast<size_t>(p)];
    }
    bool has_edge(SimplexId s, SimplexId t) const { return successors(s).contains(t); }

    // Deduplicated successor-set storage, exposed for pooled traversals.
    size_t pool_count() const { return pools_.size(); }
    int32_t pool_of(SimplexId s) const { return pool_of_[s]; }
    const SimplexSet& pool(size_t i) const { return pools_[i]; }

private:
    const SimplicialComplex* K_;
    std::vector<int32_t> pool_of_;
    std::vector<SimplexSet> pools_;
    std::unordered_map<SimplexSet, int32_t, SimplexSetHash> pool_ids_;
    SimplexSet empty_;
};

using CDS = CombinatorialDynamicalSystem;

struct MorseDecomposition {
    std::vector<SimplexSet> sets;
    // below[i] lists every j with sets[i] > sets[j] (full reachability order).
    std::vector<std::vector<int>> below;

    bool greater(int i, int j) const;
};

// Every element of A lies on a bi-infinite walk of G_F inside A.
bool is_invariant(const CDS& F, const SimplexSet& A);

// Largest invariant subset S(F).
SimplexSet maximal_invariant_set(const CDS& F);

// N is closed, S an invariant subset, and no walk through N leaves S and
// returns to it.
bool is_isolating_neighborhood(const CDS& F, const SimplexSet& N, const SimplexSet& S);

bool is_isolated_invariant(const CDS& F, const SimplexSet& S);

// Strongly connected components carrying a cycle, ordered by reachability.
MorseDecomposition minimal_morse_decomposition(const CDS& F);

// Some walk (possibly of length zero) starts in M and ends in Mp.
bool connections(const CDS& F, const SimplexSet& M, const SimplexSet& Mp);

// Vertices reachable from `seeds` by walks of length >= 1 staying in `mask`
// after the first step (seeds themselves included only if re-entered).
SimplexSet forward_closure(const CDS& F, const SimplexSet& seeds, const SimplexSet& mask);

// Full consistency check of a decomposition: disjointness, invariance,
// isolation, strictness of the order, union = S(F). Used by tests; costly.
bool verify_morse_decomposition(const CDS& F, const MorseDecomposition& md,
                                std::string* why = nullptr);

// --- digraph text format ------------------------------------------------------
// One line per simplex: "id: succ succ ...". Ids are complex simplex ids.
void write_digraph(std::ostream& out, const CDS& F);
CDS read_digraph(std::istream& in, const SimplicialComplex& K);

}  // namespace mdyn

#endif
