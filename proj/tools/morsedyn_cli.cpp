#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "morsedyn/pipelines.hpp"

namespace fs = std::filesystem;
using namespace mdyn;

namespace {

struct Global {
    uint64_t seed = 1;
    bool seed_set = false;
    std::string config_path;
    std::string out_dir = ".";
};

RunConfig make_config(const Global& g, const RunConfig& base) {
    RunConfig cfg = base;
    if (!g.config_path.empty()) {
        std::ifstream in(g.config_path);
        if (!in) throw CLI::ValidationError("--config", "cannot open " + g.config_path);
        apply_config(cfg, parse_config(in));
    }
    if (g.seed_set) cfg.seed = g.seed;
    cfg.out_dir = g.out_dir;
    return cfg;
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.out_dir);
    fs::path p = fs::path(cfg.out_dir) / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    return out;
}

SimplicialComplex load_mesh(const std::string& path, const RunConfig& cfg) {
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open mesh " + path);
        return read_mesh(in);
    }
    return grid_mesh(cfg.region, cfg.nx, cfg.ny);
}

std::vector<SamplePair> load_samples(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open samples " + path);
    return read_samples(in);
}

VectorCloud load_vectors(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open vector cloud " + path);
    return read_vector_cloud(in);
}

void write_metadata(std::ostream& out, const RunConfig& cfg,
                    const std::vector<std::pair<std::string, std::string>>& extra) {
    out << "seed = " << cfg.seed << "\n";
    out << "nx = " << cfg.nx << "\n";
    out << "ny = " << cfg.ny << "\n";
    out << "region = [" << format_double(static_cast<double>(cfg.region.x0)) << ", "
        << format_double(static_cast<double>(cfg.region.y0)) << "] x ["
        << format_double(static_cast<double>(cfg.region.x1)) << ", "
        << format_double(static_cast<double>(cfg.region.y1)) << "]\n";
    out << "normal_variates = " << Rng::kNormalAlgorithm << "\n";
    for (const auto& [k, v] : extra) out << k << " = " << v << "\n";
}

std::string step_name(const char* prefix, size_t i, const char* ext) {
    std::ostringstream os;
    os << prefix << (i < 9 ? "00" : i < 99 ? "0" : "") << i + 1 << ext;
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Morse decompositions and persistence of sampled combinatorial dynamics"};
    app.require_subcommand(1);

    Global g;
    app.add_option("--seed", g.seed, "RNG seed")->each([&](const std::string&) {
        g.seed_set = true;
    });
    app.add_option("--config", g.config_path, "flat key=value config file");
    app.add_option("--out", g.out_dir, "output directory");

    std::string mesh_path, samples_path, vectors_path, digraph_path, mvf_path,
        barcode_path, morse_path;
    double mu = 0.0, alpha = 0.0;
    int steps = 0;
    bool lv_defaults = false;

    auto* c_mesh = app.add_subcommand("mesh-grid", "triangulated grid mesh");
    c_mesh->add_flag("--lv", lv_defaults, "use the Lotka-Volterra default region/grid");

    auto* c_kuz = app.add_subcommand("sample-kuznetsov", "sample the Kuznetsov map");

    auto* c_lv = app.add_subcommand("sample-lv", "Lotka-Volterra vectors at mesh vertices");
    c_lv->add_option("--mesh", mesh_path, "mesh file (default: config grid)");

    auto* c_fmu = app.add_subcommand("fmu", "build the sampled system F_mu");
    c_fmu->add_option("--mesh", mesh_path);
    c_fmu->add_option("--samples", samples_path)->required();
    c_fmu->add_option("--mu", mu, "threshold in [0,1]")->required();

    auto* c_cvcmf = app.add_subcommand("cvcmf", "multivector field from a vector cloud");
    c_cvcmf->add_option("--mesh", mesh_path);
    c_cvcmf->add_option("--vectors", vectors_path)->required();
    c_cvcmf->add_option("--alpha", alpha, "angle threshold in degrees")->required();

    auto* c_morse = app.add_subcommand("morse", "minimal Morse decomposition");
    c_morse->add_option("--mesh", mesh_path);
    c_morse->add_option("--digraph", digraph_path, "CDS digraph file");
    c_morse->add_option("--mvf", mvf_path, "multivector field file");

    auto* c_sweep = app.add_subcommand("sweep-mu", "mu-sweep persistence of F_mu");
    c_sweep->add_option("--mesh", mesh_path);
    c_sweep->add_option("--samples", samples_path, "samples CSV (default: sample per config)");

    auto* c_zig = app.add_subcommand("zigzag-alpha", "alpha-zigzag persistence of CVCMF");
    c_zig->add_option("--mesh", mesh_path);
    c_zig->add_option("--vectors", vectors_path, "vector cloud CSV (default: LV per config)");

    auto* c_render = app.add_subcommand("render", "re-render artifacts");
    c_render->add_option("--barcode", barcode_path, "barcode CSV");
    c_render->add_option("--steps", steps, "step count for barcode axes");
    c_render->add_option("--mesh", mesh_path);
    c_render->add_option("--morse", morse_path, "Morse dump for an overlay");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_mesh->parsed()) {
            RunConfig cfg = make_config(g, lv_defaults ? default_lv_config()
                                                       : default_kuznetsov_config());
            auto out = open_out(cfg, "mesh.txt");
            write_mesh(out, grid_mesh(cfg.region, cfg.nx, cfg.ny));
        } else if (c_kuz->parsed()) {
            RunConfig cfg = make_config(g, default_kuznetsov_config());
            Rng rng(cfg.seed);
            size_t rejected = 0;
            auto pairs = sample_kuznetsov({}, cfg.effective_sigma_x(),
                                          cfg.effective_sigma_y(), cfg.samples, rng,
                                          &rejected);
            { auto out = open_out(cfg, "samples.csv"); write_samples(out, pairs); }
            auto meta = open_out(cfg, "metadata.txt");
            write_metadata(meta, cfg,
                           {{"samples", std::to_string(pairs.size())},
                            {"rejected", std::to_string(rejected)},
                            {"sigma_x", format_double(cfg.effective_sigma_x())},
                            {"sigma_y", format_double(cfg.effective_sigma_y())}});
        } else if (c_lv->parsed()) {
            RunConfig cfg = make_config(g, default_lv_config());
            SimplicialComplex mesh = load_mesh(mesh_path, cfg);
            auto out = open_out(cfg, "vectors.csv");
            write_vector_cloud(out, mesh, sample_lv_vectors({}, mesh));
        } else if (c_fmu->parsed()) {
            RunConfig cfg = make_config(g, default_kuznetsov_config());
            SimplicialComplex mesh = load_mesh(mesh_path, cfg);
            FrequencyTable table = count_frequencies(mesh, load_samples(samples_path));
            CDS f = build_f_mu(mesh, table, rational_from_double(mu));
            auto out = open_out(cfg, "digraph.txt");
            write_digraph(out, f);
        } else if (c_cvcmf->parsed()) {
            RunConfig cfg = make_config(g, default_lv_config());
            SimplicialComplex mesh = load_mesh(mesh_path, cfg);
            MultivectorField v = cvcmf(mesh, load_vectors(vectors_path), alpha);
            auto out = open_out(cfg, "mvf.txt");
            write_mvf(out, v);
        } else if (c_morse->parsed()) {
            RunConfig cfg = make_config(g, default_kuznetsov_config());
            SimplicialComplex mesh = load_mesh(mesh_path, cfg);
            CDS f = [&] {
                if (!digraph_path.empty()) {
                    std::ifstream in(digraph_path);
                    if (!in) throw std::runtime_error("cannot open " + digraph_path);
                    return read_digraph(in, mesh);
                }
                if (mvf_path.empty())
                    throw std::runtime_error("morse: need --digraph or --mvf");
                std::ifstream in(mvf_path);
                if (!in) throw std::runtime_error("cannot open " + mvf_path);
                return generated_system(validate_mvf(mesh, read_mvf_parts(in, mesh)));
            }();
            MorseDecomposition md = minimal_morse_decomposition(f);
            auto out = open_out(cfg, "morse.txt");
            write_morse(out, mesh, md);
        } else if (c_sweep->parsed()) {
            RunConfig cfg = make_config(g, default_kuznetsov_config());
            SimplicialComplex mesh = load_mesh(mesh_path, cfg);
            std::vector<SamplePair> pairs;
            size_t rejected_draws = 0;
            if (!samples_path.empty()) {
                pairs = load_samples(samples_path);
            } else {
                Rng rng(cfg.seed);
                pairs = sample_kuznetsov({}, cfg.effective_sigma_x(),
                                         cfg.effective_sigma_y(), cfg.samples, rng,
                                         &rejected_draws);
            }
            std::vector<Rat> levels;
            for (double m : cfg.mu_levels) levels.push_back(rational_from_double(m));
            SweepResult r = run_mu_sweep(mesh, pairs, levels);
            { auto out = open_out(cfg, "barcode.csv"); write_barcode(out, r.barcode); }
            int n = static_cast<int>(r.levels.size());
            { auto out = open_out(cfg, "barcode.svg"); render_barcode_svg(out, r.barcode, n); }
            { auto out = open_out(cfg, "diagram.svg"); render_diagram_svg(out, r.barcode, n); }
            for (size_t i = 0; i < r.decomps.size(); ++i) {
                auto out = open_out(cfg, step_name("morse-", i, ".txt"));
                write_morse(out, mesh, r.decomps[i]);
            }
            for (int s : cfg.overlay_steps) {
                if (s < 1 || s > n) throw std::runtime_error("overlay step out of range");
                auto out = open_out(cfg, step_name("overlay-", static_cast<size_t>(s - 1), ".svg"));
                render_morse_overlay_svg(out, mesh, r.decomps[static_cast<size_t>(s - 1)].sets);
            }
            std::vector<std::pair<std::string, std::string>> extra{
                {"samples", std::to_string(pairs.size())},
                {"rejected_draws", std::to_string(rejected_draws)},
                {"n_max", std::to_string(r.n_max)},
                {"levels", std::to_string(r.levels.size())}};
            std::ostringstream lv;
            for (size_t i = 0; i < r.levels.size(); ++i)
                lv << (i ? "," : "") << format_double(static_cast<double>(r.levels[i]));
            extra.emplace_back("mu_levels", lv.str());
            auto meta = open_out(cfg, "metadata.txt");
            write_metadata(meta, cfg, extra);
        } else if (c_zig->parsed()) {
            RunConfig cfg = make_config(g, default_lv_config());
            SimplicialComplex mesh = load_mesh(mesh_path, cfg);
            VectorCloud cloud = vectors_path.empty() ? sample_lv_vectors({}, mesh)
                                                     : load_vectors(vectors_path);
            ZigzagResult r = run_alpha_zigzag(mesh, cloud, cfg.alpha_levels);
            { auto out = open_out(cfg, "barcode.csv"); write_barcode(out, r.barcode); }
            int n = static_cast<int>(r.nerves.size());
            { auto out = open_out(cfg, "barcode.svg"); render_barcode_svg(out, r.barcode, n); }
            { auto out = open_out(cfg, "diagram.svg"); render_diagram_svg(out, r.barcode, n); }
            for (size_t i = 0; i < r.decomps.size(); ++i) {
                auto out = open_out(cfg, step_name("morse-", i, ".txt"));
                write_morse(out, mesh, r.decomps[i]);
            }
            for (int s : cfg.overlay_steps) {
                if (s < 1 || s > n) throw std::runtime_error("overlay step out of range");
                auto out = open_out(cfg, step_name("overlay-", static_cast<size_t>(s - 1), ".svg"));
                render_morse_overlay_svg(out, mesh, r.kept[static_cast<size_t>(s - 1)]);
            }
            std::ostringstream al;
            for (size_t i = 0; i < r.alphas.size(); ++i)
                al << (i ? "," : "") << format_double(r.alphas[i]);
            auto meta = open_out(cfg, "metadata.txt");
            write_metadata(meta, cfg, {{"alpha_levels", al.str()},
                                       {"steps", std::to_string(n)}});
        } else if (c_render->parsed()) {
            RunConfig cfg = make_config(g, default_kuznetsov_config());
            if (!barcode_path.empty()) {
                std::ifstream in(barcode_path);
                if (!in) throw std::runtime_error("cannot open " + barcode_path);
                Barcode b = read_barcode(in);
                int n = steps;
                if (n <= 0)
                    for (const Bar& x : b.bars) n = std::max(n, std::max(x.birth, x.death));
                if (n <= 0) n = 1;
                { auto out = open_out(cfg, "barcode.svg"); render_barcode_svg(out, b, n); }
                { auto out = open_out(cfg, "diagram.svg"); render_diagram_svg(out, b, n); }
            }
            if (!morse_path.empty()) {
                SimplicialComplex mesh = load_mesh(mesh_path, cfg);
                std::ifstream in(morse_path);
                if (!in) throw std::runtime_error("cannot open " + morse_path);
                // Morse dump lines "i: label label ..."; order lines ignored.
                std::vector<SimplexSet> sets;
                std::string line;
                while (std::getline(in, line)) {
                    if (line.empty() || line.rfind("order:", 0) == 0) continue;
                    std::istringstream ls(line);
                    std::string head;
                    ls >> head;
                    SimplexSet s = mesh.make_set();
                    std::string lab;
                    while (ls >> lab) {
                        std::vector<int> vs;
                        std::istringstream vv(lab);
                        std::string tok;
                        while (std::getline(vv, tok, '.')) vs.push_back(std::stoi(tok));
                        long id = mesh.find(vs);
                        if (id < 0) throw std::runtime_error("overlay: unknown simplex " + lab);
                        s.insert(static_cast<SimplexId>(id));
                    }
                    sets.push_back(std::move(s));
                }
                auto out = open_out(cfg, "overlay.svg");
                render_morse_overlay_svg(out, mesh, sets);
            }
            if (barcode_path.empty() && morse_path.empty())
                throw std::runtime_error("render: need --barcode and/or --morse");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
