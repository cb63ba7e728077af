#ifndef MORSEDYN_PERSISTENCE_HPP
#define MORSEDYN_PERSISTENCE_HPP

#include <iosfwd>
#include <vector>

#include "morsedyn/homology.hpp"

namespace mdyn {

// A pointwise finite-dimensional Z/2 representation of an A_n quiver: n
// spaces joined by n-1 arrows, each forward (space i -> i+1) or backward.
struct PersistenceModule {
    std::vector<size_t> dims;      // n space dimensions
    std::vector<MatZ2> arrows;     // n-1 maps
    std::vector<uint8_t> forward;  // n-1 orientation flags

    size_t length() const { return dims.size(); }
    // Throws when arrow shapes disagree with adjacent space dimensions.
    void validate() const;
};

// Closed interval of step indices, 1-based, 1 <= birth <= death <= n.
struct Interval {
    int birth = 0;
    int death = 0;
    bool operator==(const Interval& o) const {
        return birth == o.birth && death == o.death;
    }
};

// One barcode bar; death == kInfDeath marks a bar alive through the last
// step, serialized as the literal `inf`.
inline constexpr int kInfDeath = -1;
struct Bar {
    int dim = 0;
    int birth = 0;
    int death = 0;
};
struct Barcode {
    std::vector<Bar> bars;
};

// Interval decomposition of an all-forward module (errors otherwise).
std::vector<Interval> filtration_persistence(const PersistenceModule& m);

// Interval decomposition of an arbitrarily oriented A_n module, via the
// generalized rank invariant (limit-to-colimit rank) and inclusion-exclusion.
std::vector<Interval> zigzag_decompose(const PersistenceModule& m);

// Number of interval summands of m restricted to steps [i, j] (1-based)
// that span the whole segment.
size_t generalized_rank(const PersistenceModule& m, int i, int j);

// Pointwise-dimension invariant: at every step the number of covering
// intervals equals the space dimension.
bool pointwise_check(const PersistenceModule& m, const std::vector<Interval>& iv);

// Converts intervals of one homology dimension into bars; death at the last
// step becomes kInfDeath.
std::vector<Bar> to_bars(const std::vector<Interval>& iv, int hom_dim, int steps);

// CSV: header-free rows `dim,birth,death`, sorted by (dim, birth, death)
// with infinite deaths last per (dim, birth); death `inf` for kInfDeath.
void write_barcode(std::ostream& out, const Barcode& b);
Barcode read_barcode(std::istream& in);

}  // namespace mdyn

#endif
