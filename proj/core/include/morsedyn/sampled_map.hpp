#ifndef MORSEDYN_SAMPLED_MAP_HPP
#define MORSEDYN_SAMPLED_MAP_HPP

#include <iosfwd>
#include <map>
#include <vector>

#include "morsedyn/convexity.hpp"
#include "morsedyn/dynamics.hpp"

namespace mdyn {

// One observation (x, f(x)+noise) of the sampled map. Stored as doubles (the
// sampler's native output); geometry converts them to exact rationals, so
// counting is deterministic bit-for-bit.
struct SamplePair {
    double x1 = 0, x2 = 0;
    double y1 = 0, y2 = 0;
};

struct FrequencyTable {
    // (toplex, toplex) -> number of pairs with x in cl|t| and y in cl|t'|.
    std::map<std::pair<SimplexId, SimplexId>, long> counts;
    long n_max = 0;
    size_t accepted = 0;
    size_t rejected = 0;  // pairs with an endpoint outside |K|
};

// Closed-cell counting: a point on a shared face is counted for every
// incident toplex. Pairs with either endpoint outside the polytope are
// rejected (and tallied).
FrequencyTable count_frequencies(const SimplicialComplex& K,
                                 const std::vector<SamplePair>& pairs,
                                 const BucketIndex* index = nullptr);

// Thresholded system F_mu(s) = co U{ A_{mu,t} : s face of toplex t } with
// A_{mu,t} = { t' : n_{t,t'} / n_max >= mu }. mu = 0 admits every toplex.
CDS build_f_mu(const SimplicialComplex& K, const FrequencyTable& table, const Rat& mu,
               ConvexityEngine* engine = nullptr);

// Toplexes whose closed cell contains p (exact; empty when p is outside |K|).
std::vector<SimplexId> toplexes_containing(const SimplicialComplex& K, const BucketIndex& index,
                                           const Pt& p);

// --- sample CSV ("x1,x2,y1,y2" per line; "x,y" in 1-D) -------------------------
void write_samples(std::ostream& out, const std::vector<SamplePair>& pairs, int dim = 2);
std::vector<SamplePair> read_samples(std::istream& in);

}  // namespace mdyn

#endif
