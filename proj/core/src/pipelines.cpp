#include "morsedyn/pipelines.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mdyn {

double RunConfig::cell_width() const {
    return static_cast<double>((region.x1 - region.x0) / nx);
}
double RunConfig::effective_sigma_x() const {
    return sigma_x >= 0 ? sigma_x : cell_width() / 4.0;
}
double RunConfig::effective_sigma_y() const {
    return sigma_y >= 0 ? sigma_y : cell_width();
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& v, Parse parse) {
    std::vector<T> out;
    std::istringstream ls(v);
    std::string item;
    while (std::getline(ls, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse(item));
    }
    return out;
}

}  // namespace

std::map<std::string, std::string> parse_config(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value, got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument("config: empty key");
        kv[key] = val;
    }
    return kv;
}

void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, val] : kv) {
        if (key == "seed") cfg.seed = std::stoull(val);
        else if (key == "nx") cfg.nx = std::stoi(val);
        else if (key == "ny") cfg.ny = std::stoi(val);
        else if (key == "x0") cfg.region.x0 = rational_from_double(std::stod(val));
        else if (key == "y0") cfg.region.y0 = rational_from_double(std::stod(val));
        else if (key == "x1") cfg.region.x1 = rational_from_double(std::stod(val));
        else if (key == "y1") cfg.region.y1 = rational_from_double(std::stod(val));
        else if (key == "sigma_x") cfg.sigma_x = std::stod(val);
        else if (key == "sigma_y") cfg.sigma_y = std::stod(val);
        else if (key == "samples") cfg.samples = std::stoull(val);
        else if (key == "mu_levels")
            cfg.mu_levels = parse_list<double>(val, [](const std::string& s) { return std::stod(s); });
        else if (key == "alpha_levels")
            cfg.alpha_levels = parse_list<double>(val, [](const std::string& s) { return std::stod(s); });
        else if (key == "overlay_steps")
            cfg.overlay_steps = parse_list<int>(val, [](const std::string& s) { return std::stoi(s); });
        else if (key == "out") cfg.out_dir = val;
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

RunConfig default_kuznetsov_config() { return RunConfig{}; }

RunConfig default_lv_config() {
    RunConfig cfg;
    cfg.nx = 60;
    cfg.ny = 40;
    cfg.region = {Rat(1, 20), Rat(1, 20), Rat(7, 2), Rat(2)};
    cfg.alpha_levels = {0, 7, 14, 21, 28, 35};
    return cfg;
}

namespace {

// Every set of `fine` inside one set of `coarse`, union included; throws
// with a witness otherwise.
void assert_refines(const SimplicialComplex& K, const std::vector<SimplexSet>& fine,
                    const std::vector<SimplexSet>& coarse, const std::string& where) {
    for (size_t i = 0; i < fine.size(); ++i) {
        int owner = -1;
        bool split = false;
        fine[i].for_each([&](SimplexId s) {
            int o = -1;
            for (size_t j = 0; j < coarse.size(); ++j)
                if (coarse[j].contains(s)) { o = static_cast<int>(j); break; }
            if (owner == -1) owner = o;
            if (o == -1 || o != owner) split = true;
        });
        if (owner == -1 || split)
            throw std::runtime_error(where + ": Morse set " + std::to_string(i) +
                                     " (e.g. " + K.label(fine[i].to_vector().front()) +
                                     ") does not refine into the coarser decomposition");
    }
}

struct StepHomology {
    HomologyBasis h0, h1;
};

StepHomology bases_of(const OrderComplex& n) {
    return {HomologyBasis(n.cx, 0), HomologyBasis(n.cx, 1)};
}

Barcode bars_of(const PersistenceModule& h0, const PersistenceModule& h1,
                const std::vector<Interval>& iv0, const std::vector<Interval>& iv1) {
    if (!pointwise_check(h0, iv0) || !pointwise_check(h1, iv1))
        throw std::logic_error("pointwise-dimension invariant violated");
    int n = static_cast<int>(h0.length());
    Barcode b;
    for (const Bar& x : to_bars(iv0, 0, n)) b.bars.push_back(x);
    for (const Bar& x : to_bars(iv1, 1, n)) b.bars.push_back(x);
    return b;
}

}  // namespace

SweepResult run_mu_sweep(const SimplicialComplex& mesh,
                         const std::vector<SamplePair>& pairs,
                         std::vector<Rat> levels) {
    SweepResult r;
    BucketIndex index(mesh);
    FrequencyTable table = count_frequencies(mesh, pairs, &index);
    r.n_max = table.n_max;
    if (table.n_max <= 0) throw std::invalid_argument("run_mu_sweep: no accepted samples");
    if (levels.empty())
        for (long i = table.n_max / 2; i >= 0; --i)
            levels.push_back(Rat(2 * i, table.n_max));
    for (size_t i = 1; i < levels.size(); ++i)
        if (!(levels[i] < levels[i - 1]))
            throw std::invalid_argument("run_mu_sweep: mu levels must be strictly decreasing");
    r.levels = levels;

    ConvexityEngine engine(mesh);
    for (size_t i = 0; i < levels.size(); ++i) {
        CDS f = build_f_mu(mesh, table, levels[i], &engine);
        r.decomps.push_back(minimal_morse_decomposition(f));
        if (i > 0)
            assert_refines(mesh, r.decomps[i - 1].sets, r.decomps[i].sets,
                           "mu sweep step " + std::to_string(i + 1));
        r.nerves.push_back(morse_nerve(mesh, r.decomps[i].sets));
    }

    size_t n = r.nerves.size();
    std::vector<StepHomology> bases;
    bases.reserve(n);
    for (const OrderComplex& nv : r.nerves) bases.push_back(bases_of(nv));
    r.h0.dims.resize(n);
    r.h1.dims.resize(n);
    for (size_t i = 0; i < n; ++i) {
        r.h0.dims[i] = bases[i].h0.rank();
        r.h1.dims[i] = bases[i].h1.rank();
    }
    for (size_t i = 0; i + 1 < n; ++i) {
        std::vector<int> cm = nerve_inclusion(r.nerves[i], r.nerves[i + 1]);
        r.h0.arrows.push_back(induced_map(r.nerves[i].cx, bases[i].h0,
                                          r.nerves[i + 1].cx, bases[i + 1].h0, cm));
        r.h1.arrows.push_back(induced_map(r.nerves[i].cx, bases[i].h1,
                                          r.nerves[i + 1].cx, bases[i + 1].h1, cm));
        r.h0.forward.push_back(1);
        r.h1.forward.push_back(1);
    }
    r.barcode = bars_of(r.h0, r.h1, filtration_persistence(r.h0),
                        filtration_persistence(r.h1));
    return r;
}

ZigzagResult run_alpha_zigzag(const SimplicialComplex& mesh, const VectorCloud& cloud,
                              const std::vector<double>& alphas_deg) {
    if (alphas_deg.empty())
        throw std::invalid_argument("run_alpha_zigzag: alpha list is empty");
    ZigzagResult r;
    r.alphas = alphas_deg;

    std::vector<MultivectorField> v;
    v.reserve(alphas_deg.size());
    for (double a : alphas_deg) v.push_back(cvcmf(mesh, cloud, a));

    // Module steps: V_1, V_1 n V_2, V_2, ..., V_m (2m-1 steps).
    size_t m = v.size();
    for (size_t i = 0; i < m; ++i) {
        if (i) r.fields.push_back(intersect(v[i - 1], v[i]));
        r.fields.push_back(v[i]);
    }

    std::vector<std::vector<char>> kept_flag;
    for (const MultivectorField& f : r.fields) {
        CDS g = generated_system(f);
        MorseDecomposition md = minimal_morse_decomposition(g);
        std::vector<char> flags;
        for (const SimplexSet& s : md.sets) {
            // Trivial filter: Morse sets that are a single multivector with
            // vanishing relative homology are dropped before the nerve.
            SimplexId first = s.to_vector().front();
            const SimplexSet& part = f.parts[static_cast<size_t>(f.part_of[first])];
            flags.push_back(!(s == part && is_trivial_morse(mesh, s)));
        }
        kept_flag.push_back(std::move(flags));
        r.decomps.push_back(std::move(md));
    }

    // Refinement legs: each interleaved field's decomposition refines both
    // neighbors. The filter must stay consistent across inclusions: an
    // interleaved-step Morse set whose containing neighbor set was dropped
    // as trivial is dropped too, otherwise its nerve has no image.
    for (size_t i = 1; i + 1 < r.decomps.size(); i += 2) {
        assert_refines(mesh, r.decomps[i].sets, r.decomps[i - 1].sets,
                       "zigzag leg " + std::to_string(i + 1) + " -> " + std::to_string(i));
        assert_refines(mesh, r.decomps[i].sets, r.decomps[i + 1].sets,
                       "zigzag leg " + std::to_string(i + 1) + " -> " + std::to_string(i + 2));
        for (size_t k = 0; k < r.decomps[i].sets.size(); ++k) {
            if (!kept_flag[i][k]) continue;
            SimplexId probe = r.decomps[i].sets[k].to_vector().front();
            for (size_t nb : {i - 1, i + 1}) {
                for (size_t j = 0; j < r.decomps[nb].sets.size(); ++j)
                    if (r.decomps[nb].sets[j].contains(probe)) {
                        if (!kept_flag[nb][j]) kept_flag[i][k] = 0;
                        break;
                    }
            }
        }
    }

    for (size_t i = 0; i < r.decomps.size(); ++i) {
        std::vector<SimplexSet> keep;
        for (size_t k = 0; k < r.decomps[i].sets.size(); ++k)
            if (kept_flag[i][k]) keep.push_back(r.decomps[i].sets[k]);
        r.nerves.push_back(morse_nerve(mesh, keep));
        r.kept.push_back(std::move(keep));
    }

    size_t n = r.nerves.size();
    std::vector<StepHomology> bases;
    bases.reserve(n);
    for (const OrderComplex& nv : r.nerves) bases.push_back(bases_of(nv));
    r.h0.dims.resize(n);
    r.h1.dims.resize(n);
    for (size_t i = 0; i < n; ++i) {
        r.h0.dims[i] = bases[i].h0.rank();
        r.h1.dims[i] = bases[i].h1.rank();
    }
    for (size_t i = 0; i + 1 < n; ++i) {
        // Odd indices hold the interleaved fields; arrows point from them
        // into both neighbors.
        size_t fine = (i % 2 == 0) ? i + 1 : i;
        size_t coarse = (i % 2 == 0) ? i : i + 1;
        std::vector<int> cm = nerve_inclusion(r.nerves[fine], r.nerves[coarse]);
        MatZ2 a0 = induced_map(r.nerves[fine].cx, bases[fine].h0,
                               r.nerves[coarse].cx, bases[coarse].h0, cm);
        MatZ2 a1 = induced_map(r.nerves[fine].cx, bases[fine].h1,
                               r.nerves[coarse].cx, bases[coarse].h1, cm);
        r.h0.arrows.push_back(std::move(a0));
        r.h1.arrows.push_back(std::move(a1));
        r.h0.forward.push_back(fine == i ? 1 : 0);
        r.h1.forward.push_back(fine == i ? 1 : 0);
    }
    r.barcode = bars_of(r.h0, r.h1, zigzag_decompose(r.h0), zigzag_decompose(r.h1));
    return r;
}

// --- renderers ---------------------------------------------------------------

namespace {

const char* kPalette[10] = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00",
                            "#a65628", "#f781bf", "#17becf", "#666666", "#b8860b"};

std::vector<Bar> sorted_bars(const Barcode& b) {
    std::vector<Bar> bars = b.bars;
    std::sort(bars.begin(), bars.end(), [](const Bar& a, const Bar& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.birth != b.birth) return a.birth < b.birth;
        if ((a.death == kInfDeath) != (b.death == kInfDeath))
            return b.death == kInfDeath;
        return a.death < b.death;
    });
    return bars;
}

}  // namespace

void render_barcode_svg(std::ostream& out, const Barcode& b, int steps) {
    std::vector<Bar> bars = sorted_bars(b);
    int rows = static_cast<int>(bars.size());
    int h = 60 + rows * 14, w = 640;
    double x0 = 60, x1 = 600;
    auto sx = [&](double t) {
        return steps > 1 ? x0 + (t - 1) * (x1 - x0) / (steps - 1) : (x0 + x1) / 2;
    };
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\""
        << h << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    out << "<line x1=\"" << format_double(x0) << "\" y1=\"" << h - 30 << "\" x2=\""
        << format_double(x1) << "\" y2=\"" << h - 30
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (int t = 1; t <= steps; ++t)
        out << "<line x1=\"" << format_double(sx(t)) << "\" y1=\"" << h - 34
            << "\" x2=\"" << format_double(sx(t)) << "\" y2=\"" << h - 26
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    int row = 0;
    for (const Bar& x : bars) {
        double y = 20 + row * 14;
        double d = x.death == kInfDeath ? steps : x.death;
        const char* color = x.dim == 0 ? "#e6b422" : "#1f77b4";
        out << "<line x1=\"" << format_double(sx(x.birth)) << "\" y1=\""
            << format_double(y) << "\" x2=\"" << format_double(sx(d)) << "\" y2=\""
            << format_double(y) << "\" stroke=\"" << color
            << "\" stroke-width=\"6\"/>\n";
        if (x.death == kInfDeath)
            out << "<path d=\"M " << format_double(sx(d)) << " " << format_double(y - 5)
                << " l 8 5 l -8 5 z\" fill=\"" << color << "\"/>\n";
        ++row;
    }
    out << "</svg>\n";
}

void render_diagram_svg(std::ostream& out, const Barcode& b, int steps) {
    int w = 440, h = 440;
    double lo = 40, hi = 400;
    auto sc = [&](double t) {
        return steps > 1 ? lo + (t - 1) * (hi - lo) / (steps - 1) : (lo + hi) / 2;
    };
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\""
        << h << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    out << "<line x1=\"" << format_double(lo) << "\" y1=\"" << format_double(hi)
        << "\" x2=\"" << format_double(hi) << "\" y2=\"" << format_double(hi)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << format_double(lo) << "\" y1=\"" << format_double(lo)
        << "\" x2=\"" << format_double(lo) << "\" y2=\"" << format_double(hi)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << format_double(lo) << "\" y1=\"" << format_double(hi)
        << "\" x2=\"" << format_double(hi) << "\" y2=\"" << format_double(lo)
        << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    for (const Bar& x : sorted_bars(b)) {
        double d = x.death == kInfDeath ? steps : x.death;
        double px = sc(x.birth), py = hi + lo - sc(d);
        if (x.dim == 0) {
            out << "<path d=\"M " << format_double(px - 5) << " " << format_double(py)
                << " h 10 M " << format_double(px) << " " << format_double(py - 5)
                << " v 10\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
        } else {
            out << "<path d=\"M " << format_double(px - 4) << " " << format_double(py - 4)
                << " l 8 8 M " << format_double(px - 4) << " " << format_double(py + 4)
                << " l 8 -8\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
        }
    }
    out << "</svg>\n";
}

void render_morse_overlay_svg(std::ostream& out, const SimplicialComplex& K,
                              const std::vector<SimplexSet>& sets) {
    if (!K.has_geometry())
        throw std::invalid_argument("render_morse_overlay_svg: mesh lacks geometry");
    double minx = 0, miny = 0, maxx = 1, maxy = 1;
    for (int i = 0; i < K.vertex_count(); ++i) {
        double x = static_cast<double>(K.coord(i).x), y = static_cast<double>(K.coord(i).y);
        if (i == 0) { minx = maxx = x; miny = maxy = y; }
        minx = std::min(minx, x); maxx = std::max(maxx, x);
        miny = std::min(miny, y); maxy = std::max(maxy, y);
    }
    double w = 800;
    double s = (maxx - minx) > 0 ? (w - 20) / (maxx - minx) : 1;
    double h = (maxy - miny) * s + 20;
    auto px = [&](const Pt& p) { return 10 + (static_cast<double>(p.x) - minx) * s; };
    auto py = [&](const Pt& p) { return h - 10 - (static_cast<double>(p.y) - miny) * s; };
    auto owner = [&](SimplexId c) {
        for (size_t j = 0; j < sets.size(); ++j)
            if (sets[j].contains(c)) return static_cast<int>(j);
        return -1;
    };
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_double(w)
        << "\" height=\"" << format_double(h) << "\" viewBox=\"0 0 " << format_double(w)
        << " " << format_double(h) << "\">\n";
    // Triangles first, then highlighted edges, then vertices.
    for (SimplexId c = 0; c < K.size(); ++c) {
        if (K.dim(c) != 2) continue;
        int o = owner(c);
        const auto& vs = K.vertices(c);
        out << "<path d=\"";
        for (size_t i = 0; i < vs.size(); ++i)
            out << (i == 0 ? "M " : "L ") << format_double(px(K.coord(vs[i]))) << " "
                << format_double(py(K.coord(vs[i]))) << " ";
        out << "Z\" fill=\"" << (o >= 0 ? kPalette[o % 10] : "#f2f2f2")
            << "\" stroke=\"#bbbbbb\" stroke-width=\"0.5\"/>\n";
    }
    for (SimplexId c = 0; c < K.size(); ++c) {
        if (K.dim(c) != 1) continue;
        int o = owner(c);
        if (o < 0) continue;
        const auto& vs = K.vertices(c);
        out << "<line x1=\"" << format_double(px(K.coord(vs[0]))) << "\" y1=\""
            << format_double(py(K.coord(vs[0]))) << "\" x2=\""
            << format_double(px(K.coord(vs[1]))) << "\" y2=\""
            << format_double(py(K.coord(vs[1]))) << "\" stroke=\"" << kPalette[o % 10]
            << "\" stroke-width=\"2.5\"/>\n";
    }
    for (SimplexId c = 0; c < K.size(); ++c) {
        if (K.dim(c) != 0) continue;
        int o = owner(c);
        if (o < 0) continue;
        out << "<circle cx=\"" << format_double(px(K.coord(K.vertices(c)[0])))
            << "\" cy=\"" << format_double(py(K.coord(K.vertices(c)[0])))
            << "\" r=\"3\" fill=\"" << kPalette[o % 10] << "\"/>\n";
    }
    out << "</svg>\n";
}

void write_morse(std::ostream& out, const SimplicialComplex& K,
                 const MorseDecomposition& md) {
    for (size_t i = 0; i < md.sets.size(); ++i) {
        out << i << ":";
        md.sets[i].for_each([&](SimplexId s) { out << " " << K.label(s); });
        out << "\n";
    }
    for (size_t i = 0; i < md.sets.size(); ++i)
        for (int j : md.below[i]) out << "order: " << i << " > " << j << "\n";
}

size_t count_persistent_bars(const Barcode& b, int dim, int steps, int window,
                             double frac) {
    size_t n = 0;
    for (const Bar& x : b.bars) {
        if (x.dim != dim) continue;
        int death = x.death == kInfDeath ? steps : x.death;
        int span = death - x.birth + 1;
        if (window > 0 && span >= frac * window) ++n;
    }
    return n;
}

size_t emergence_index(const SweepResult& r) {
    for (size_t i = 0; i < r.decomps.size(); ++i)
        if (!r.decomps[i].sets.empty()) return i + 1;
    return r.decomps.size() + 1;
}

size_t count_full_bars(const Barcode& b, int dim) {
    size_t n = 0;
    for (const Bar& x : b.bars)
        if (x.dim == dim && x.birth == 1 && x.death == kInfDeath) ++n;
    return n;
}

}  // namespace mdyn
