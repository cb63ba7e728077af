#ifndef MORSEDYN_PIPELINES_HPP
#define MORSEDYN_PIPELINES_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "morsedyn/models.hpp"
#include "morsedyn/nerve.hpp"
#include "morsedyn/persistence.hpp"

namespace mdyn {

// Flat experiment configuration; the seed fixes every stochastic output
// bit-for-bit.
struct RunConfig {
    uint64_t seed = 1;
    int nx = 48, ny = 48;
    Rect region{-1, -1, 1, 1};
    // Noise defaults follow the mesh: r = cell width, sigma_x = r/4,
    // sigma_y = r. Negative values mean "derive from the mesh".
    double sigma_x = -1.0;
    double sigma_y = -1.0;
    size_t samples = 200000;
    std::vector<double> mu_levels;     // descending; empty = 2i/n_max, i = n_max/2..1
    std::vector<double> alpha_levels;  // degrees
    std::vector<int> overlay_steps;    // 1-based steps to render overlays for
    std::string out_dir = ".";

    double cell_width() const;
    double effective_sigma_x() const;
    double effective_sigma_y() const;
};

// Flat `key = value` config text; '#' starts a comment. Unknown keys throw.
std::map<std::string, std::string> parse_config(std::istream& in);
void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv);

RunConfig default_kuznetsov_config();
RunConfig default_lv_config();

struct SweepResult {
    std::vector<Rat> levels;  // descending mu values actually used
    long n_max = 0;
    std::vector<MorseDecomposition> decomps;  // per level
    std::vector<OrderComplex> nerves;         // per level
    PersistenceModule h0, h1;
    Barcode barcode;
};

// Filtration persistence of the Morse decompositions along descending mu
// levels; asserts the refinement M(F_{mu_i}) refines M(F_{mu_{i-1}}) at
// every step (throws with a witness otherwise).
SweepResult run_mu_sweep(const SimplicialComplex& mesh,
                         const std::vector<SamplePair>& pairs,
                         std::vector<Rat> levels = {});

struct ZigzagResult {
    std::vector<double> alphas;                 // degrees
    std::vector<MultivectorField> fields;       // V_i and interleaved V_i n V_{i+1}
    std::vector<MorseDecomposition> decomps;    // per module step (2m-1)
    std::vector<std::vector<SimplexSet>> kept;  // per step, after trivial filter
    std::vector<OrderComplex> nerves;           // per step
    PersistenceModule h0, h1;
    Barcode barcode;
};

// Zigzag persistence over V_1 <- V_1 n V_2 -> V_2 <- ... with CVCMF fields
// V_i = cvcmf(alpha_i); trivial single-multivector Morse sets are dropped
// before nerve construction; both refinement legs are asserted.
ZigzagResult run_alpha_zigzag(const SimplicialComplex& mesh, const VectorCloud& cloud,
                              const std::vector<double>& alphas_deg);

// --- renderers (deterministic bytes for identical inputs) -------------------
void render_barcode_svg(std::ostream& out, const Barcode& b, int steps);
void render_diagram_svg(std::ostream& out, const Barcode& b, int steps);
void render_morse_overlay_svg(std::ostream& out, const SimplicialComplex& K,
                              const std::vector<SimplexSet>& sets);

// Morse decomposition dump: "set_id: label label ..." per set, plus
// "order: i > j" lines.
void write_morse(std::ostream& out, const SimplicialComplex& K,
                 const MorseDecomposition& md);

// Bars of dimension `dim` in an n = `steps` level module whose span
// (birth..death, an infinite death read as `steps`) covers at least
// `frac` of `window` levels.
size_t count_persistent_bars(const Barcode& b, int dim, int steps, int window,
                             double frac);

// 1-based index of the first sweep level with a nonempty Morse
// decomposition; levels.size() + 1 if none. Levels after this index are the
// ones "below the emergence level" of the Morse sets.
size_t emergence_index(const SweepResult& r);

// Full-length bars (birth 1, death inf).
size_t count_full_bars(const Barcode& b, int dim);

}  // namespace mdyn

#endif
