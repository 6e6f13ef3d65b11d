#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>
#include <spdlog/spdlog.h>

#include "waveobs/errors.hpp"
#include "waveobs/hum_control.hpp"
#include "waveobs/kernels.hpp"
#include "waveobs/obs_graph.hpp"
#include "waveobs/power_method.hpp"
#include "waveobs/shape_optimizer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace waveobs;

namespace {

/// Invalid configuration; maps to exit status 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

std::string fmt_num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned int k = 0; k < len; ++k) {
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[k]);
    }
    return os.str();
}

class Output {
public:
    explicit Output(fs::path dir) : dir_(std::move(dir)) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec || !fs::is_directory(dir_)) {
            throw ConfigError("cannot create output directory " + dir_.string());
        }
    }

    void write(const std::string& name, const std::string& content) {
        std::ofstream f(dir_ / name, std::ios::binary);
        if (!f) {
            throw ConfigError("cannot write " + (dir_ / name).string());
        }
        f << content;
        files_.push_back({{"path", name}, {"bytes", content.size()}, {"sha256", sha256_hex(content)}});
        spdlog::info("wrote {}", (dir_ / name).string());
    }

    void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

    void write_csv(const std::string& name, const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows) {
        std::string s;
        for (std::size_t k = 0; k < header.size(); ++k) {
            s += (k ? "," : "") + header[k];
        }
        s += "\n";
        for (const auto& r : rows) {
            for (std::size_t k = 0; k < r.size(); ++k) {
                s += (k ? "," : "") + fmt_num(r[k]);
            }
            s += "\n";
        }
        write(name, s);
    }

    void finish(const std::string& command, std::uint64_t seed) {
        json m;
        m["command"] = command;
        m["seed"] = seed;
        m["files"] = files_;
        std::ofstream f(dir_ / "manifest.json", std::ios::binary);
        f << m.dump(2) << "\n";
    }

private:
    fs::path dir_;
    json files_ = json::array();
};

struct Context {
    json cfg;
    fs::path base;  // directory of the config file, for relative paths
    std::uint64_t seed = 0;
};

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config key '") + key + "' has the wrong type");
    }
}

double positive(const json& j, const char* key, double fallback) {
    const double v = get_or<double>(j, key, fallback);
    if (!(v > 0.0)) {
        throw ConfigError(std::string("config key '") + key + "' must be > 0");
    }
    return v;
}

int positive_int(const json& j, const char* key, int fallback) {
    const int v = get_or<int>(j, key, fallback);
    if (v <= 0) {
        throw ConfigError(std::string("config key '") + key + "' must be a positive integer");
    }
    return v;
}

ObservationDomain domain_of(const Context& c, const json& fallback) {
    const json& d = c.cfg.contains("domain") ? c.cfg.at("domain") : fallback;
    try {
        if (d.is_string()) {
            fs::path p = d.get<std::string>();
            if (p.is_relative()) {
                p = c.base / p;
            }
            return load_domain(p.string());
        }
        return domain_from_json(d);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid domain: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid domain: ") + e.what());
    }
}

ObservationDomain require_domain(const Context& c) {
    if (!c.cfg.contains("domain")) {
        throw ConfigError("config needs a 'domain'");
    }
    return domain_of(c, json());
}

InitialState state_of(const json& cfg) {
    const std::string name = get_or<std::string>(cfg, "preset", "EX1");
    if (name == "custom") {
        try {
            return tabulated_state(cfg.at("y0").get<std::vector<double>>(),
                                   cfg.at("y1").get<std::vector<double>>());
        } catch (const json::exception& e) {
            throw ConfigError(std::string("custom preset needs y0 and y1 arrays: ") + e.what());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    try {
        return preset_state(name);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

OptimizerConfig optimizer_config(const json& cfg) {
    OptimizerConfig o;
    o.preset = get_or<std::string>(cfg, "preset", o.preset);
    o.horizon = positive(cfg, "T", o.horizon);
    o.eps_reg = get_or<double>(cfg, "eps_reg", o.eps_reg);
    if (o.eps_reg < 0.0) {
        throw ConfigError("config key 'eps_reg' must be >= 0");
    }
    o.rho = positive(cfg, "rho", o.rho);
    o.curve_intervals = static_cast<std::size_t>(positive_int(cfg, "curve_nodes", 129) - 1);
    if (o.curve_intervals < 1) {
        throw ConfigError("config key 'curve_nodes' must be >= 2");
    }
    o.level = positive_int(cfg, "level", o.level);
    o.quad_order = positive_int(cfg, "quad_order", o.quad_order);
    o.tol = positive(cfg, "tol", o.tol);
    o.delta0 = positive(cfg, "delta0", o.delta0);
    o.delta = positive(cfg, "delta", o.delta0 / 4.0);
    o.p = positive_int(cfg, "p", o.p);
    o.eta = positive(cfg, "eta", o.eta);
    o.max_iters = get_or<int>(cfg, "max_iters", o.max_iters);
    if (o.max_iters < 0) {
        throw ConfigError("config key 'max_iters' must be >= 0");
    }
    if (cfg.contains("gamma0")) {
        const json& g = cfg.at("gamma0");
        if (g.is_number()) {
            o.gamma0.value = g.get<double>();
        } else {
            o.gamma0.kind = get_or<std::string>(g, "kind", "constant");
            o.gamma0.value = get_or<double>(g, "value", 0.5);
            o.gamma0.values = get_or<std::vector<double>>(g, "values", {});
        }
    }
    if (o.delta >= o.delta0) {
        throw ConfigError("config key 'delta' must be smaller than 'delta0'");
    }
    return o;
}

std::vector<double> sweep_grid(const json& cfg) {
    std::vector<double> g = get_or<std::vector<double>>(cfg, "grid", default_sweep_grid());
    if (g.empty()) {
        throw ConfigError("config key 'grid' must be nonempty");
    }
    return g;
}

json graph_summary(const GraphConstant& c) {
    return {{"c_obs", c.c_obs},
            {"c_obs_uniform", c.c_obs_uniform},
            {"lambda", c.lambda},
            {"lambda_hat", c.lambda_hat},
            {"n", c.n},
            {"square_count", c.square_count}};
}

int graph_level(const Context& c, const ObservationDomain& d) {
    if (c.cfg.contains("level")) {
        return positive_int(c.cfg, "level", 1);
    }
    if (c.cfg.contains("eps")) {
        return static_cast<int>(std::floor(1.0 / positive(c.cfg, "eps", 1.0))) + 1;
    }
    if (const auto* u = d.as<SquareUnion>()) {
        return u->level;
    }
    throw ConfigError("config needs 'level' or 'eps' for this domain");
}

json run_graph_cobs(const Context& c, Output& out) {
    const ObservationDomain d = require_domain(c);
    const json s = graph_summary(observability_constant_at_level(d, graph_level(c, d)));
    out.write_json("graph_cobs.json", s);
    return s;
}

json run_spectrum(const Context& c, Output& out) {
    const ObservationDomain d = require_domain(c);
    const int n = graph_level(c, d);
    const ObsGraph g = build_graph(squares_in_domain(d, n), n);
    const std::vector<double> ev = spectrum(laplacian(g));
    std::vector<std::string> header;
    for (std::size_t k = 0; k < ev.size(); ++k) {
        header.push_back("lambda_" + std::to_string(k));
    }
    out.write_csv("spectrum.csv", header, {ev});
    return {{"n", n}, {"eigenvalues", ev}};
}

json run_hum(const Context& c, Output& out) {
    const InitialState st = state_of(c.cfg);
    const double T = positive(c.cfg, "T", 2.0);
    const double delta0 = positive(c.cfg, "delta0", 0.15);
    const ObservationDomain d =
        domain_of(c, domain_to_json(ObservationDomain::cylinder(0.25, delta0, T)));
    const std::string weight = get_or<std::string>(c.cfg, "weight", "smooth");
    std::optional<WeightProfile> prof;
    if (weight == "smooth") {
        prof = WeightProfile(delta0, positive(c.cfg, "delta", delta0 / 4.0));
    } else if (weight != "indicator") {
        throw ConfigError("config key 'weight' must be 'smooth' or 'indicator'");
    }
    HumConfig hc;
    hc.level = positive_int(c.cfg, "level", hc.level);
    hc.quad_order = positive_int(c.cfg, "quad_order", hc.quad_order);
    hc.tol = positive(c.cfg, "tol", hc.tol);
    const HumSolution sol = solve_hum(d, prof, st, hc);
    json s = {{"J", sol.cost},
              {"level", sol.level},
              {"cg_iterations", sol.iterations},
              {"cg_residual", sol.residual}};
    std::vector<std::vector<double>> zr;
    for (std::size_t k = 0; k < sol.z.size(); ++k) {
        zr.push_back({static_cast<double>(k + 1), sol.z[k]});
    }
    out.write_csv("coefficients.csv", {"hat", "z"}, zr);
    std::vector<std::vector<double>> ad;
    for (int i = 0; i < sol.level; ++i) {
        ad.push_back({static_cast<double>(i) / sol.level, sol.adjoint.phi0_nodes()[i],
                      sol.adjoint.beta()[i]});
    }
    ad.push_back({1.0, 0.0, 0.0});
    out.write_csv("adjoint_initial_data.csv", {"x", "phi0", "phi1_cell"}, ad);
    if (c.cfg.contains("verify_grid")) {
        const int m = positive_int(c.cfg, "verify_grid", 256);
        const ForwardResult fr = forward_verify(sol, st, m);
        s["terminal_ratio"] = fr.ratio;
        s["verify_grid"] = m;
    }
    out.write_json("hum.json", s);
    return s;
}

json run_sweep(const Context& c, Output& out) {
    const OptimizerConfig o = optimizer_config(c.cfg);
    const SweepResult s = cylindrical_sweep(state_of(c.cfg), sweep_grid(c.cfg), o);
    std::vector<std::vector<double>> rows;
    for (const auto& [x, j] : s.table) {
        rows.push_back({x, j});
    }
    out.write_csv("sweep.csv", {"x0", "J"}, rows);
    const json r = {{"best_x0", s.best_x0}, {"best_J", s.best_j}};
    out.write_json("sweep.json", r);
    return r;
}

json run_optimize(const Context& c, Output& out) {
    const OptimizerConfig o = optimizer_config(c.cfg);
    const InitialState st = state_of(c.cfg);
    const DescentTrace tr = optimize(o, st);
    if (!tr.error.empty()) {
        throw std::runtime_error(tr.error);
    }
    std::vector<std::vector<double>> it;
    for (const DescentRecord& r : tr.records) {
        it.push_back({static_cast<double>(r.iteration), r.j_eps, r.j, r.delta_j, r.lipschitz,
                      r.direction_norm});
    }
    out.write_csv("iterations.csv",
                  {"n", "J_eps", "J", "delta_J", "lipschitz_estimate", "direction_norm"}, it);
    const int every = positive_int(c.cfg, "snapshot_every", 10);
    std::vector<std::vector<double>> snaps;
    const double dt = o.horizon / static_cast<double>(o.curve_intervals);
    for (const DescentRecord& r : tr.records) {
        if (r.iteration % every != 0 && &r != &tr.records.back()) {
            continue;
        }
        for (std::size_t k = 0; k < r.curve.size(); ++k) {
            snaps.push_back({static_cast<double>(r.iteration), dt * static_cast<double>(k),
                             r.curve[k]});
        }
    }
    out.write_csv("curves.csv", {"n", "t", "gamma"}, snaps);
    json s = {{"J_eps", tr.last().j_eps},
              {"J", tr.last().j},
              {"iterations", tr.last().iteration},
              {"converged", tr.converged},
              {"lipschitz_estimate", tr.last().lipschitz}};
    if (get_or<bool>(c.cfg, "sweep", true)) {
        const SweepResult sw = cylindrical_sweep(st, sweep_grid(c.cfg), o);
        s["min_cylinder_J"] = sw.best_j;
        s["min_cylinder_x0"] = sw.best_x0;
        s["performance_index"] = performance_index(tr.last().j_eps, sw.best_j);
    }
    out.write_json("optimize.json", s);
    return s;
}

json run_power(const Context& c, Output& out) {
    const ObservationDomain d = require_domain(c);
    const int level = positive_int(c.cfg, "level", 64);
    const OperatorContext ctx(d, level, positive_int(c.cfg, "quad_order", 5),
                              positive(c.cfg, "cg_tol", 1e-10));
    const PowerResult r = power_iterate(ctx, default_power_start(level),
                                        positive_int(c.cfg, "max_iters", 50),
                                        positive(c.cfg, "tol", 1e-4));
    std::vector<std::vector<double>> est;
    for (std::size_t k = 0; k < r.estimates.size(); ++k) {
        est.push_back({static_cast<double>(k), r.estimates[k]});
    }
    out.write_csv("estimates.csv", {"n", "norm_V"}, est);
    std::vector<std::vector<double>> wd;
    for (int i = 0; i <= level; ++i) {
        wd.push_back({static_cast<double>(i) / level, r.worst_datum.first[i],
                      r.worst_datum.second[i]});
    }
    out.write_csv("worst_datum.csv", {"x", "y0", "y1"}, wd);
    const json s = {{"c_obs", r.c_obs},
                    {"iterations", r.estimates.size()},
                    {"converged", r.converged},
                    {"level", level}};
    out.write_json("power.json", s);
    return s;
}

json run_verify(const Context& c, Output& out) {
    const ObservationDomain d = require_domain(c);
    const int n = graph_level(c, d);
    const int samples = positive_int(c.cfg, "samples", 1000);
    const int pmax = positive_int(c.cfg, "p_max", 3);
    std::mt19937_64 rng(c.seed);
    std::vector<std::vector<double>> rows;
    long violations = 0;
    double worst = 0.0;
    double constant = 0.0;
    for (int p = 1; p <= pmax; ++p) {
        long pv = 0;
        double pw = 0.0;
        for (int k = 0; k < samples; ++k) {
            const ObservabilityCheck oc =
                check_discrete_observability_at_level(random_initial_data(p * n, rng), d, n);
            constant = oc.constant;
            pv += oc.holds ? 0 : 1;
            pw = std::max(pw, oc.rhs > 0.0 ? oc.lhs / oc.rhs : 0.0);
        }
        rows.push_back({static_cast<double>(p), static_cast<double>(samples),
                        static_cast<double>(pv), pw});
        violations += pv;
        worst = std::max(worst, pw);
    }
    out.write_csv("verify.csv", {"p", "samples", "violations", "max_lhs_over_rhs"}, rows);
    const json s = {{"constant", constant},
                    {"n", n},
                    {"violations", violations},
                    {"max_lhs_over_rhs", worst}};
    out.write_json("verify.json", s);
    return s;
}

void setup_logging() {
    auto level = spdlog::level::warn;
    if (const char* env = std::getenv("WAVEOBS_LOG")) {
        level = spdlog::level::from_str(env);
    }
    spdlog::set_level(level);
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    CLI::App app{"Wave observability and HUM control experiments"};
    app.require_subcommand(1);
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    int threads = 0;
    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--seed", seed, "Seed for generated test data");
    app.add_option("--threads", threads, "OpenMP thread count (0 = runtime default)")
        ->check(CLI::NonNegativeNumber);
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"graph-cobs", "Observability constant from the square graph"},
        {"spectrum", "Laplacian spectrum of the square graph"},
        {"hum", "HUM control for a preset initial state"},
        {"optimize", "Shape optimisation of a moving support"},
        {"sweep", "Cost over cylindrical supports"},
        {"power-cobs", "Observability constant by power iteration"},
        {"verify", "Random checks of the discrete observability inequality"}};
    for (const auto& [name, help] : commands) {
        app.add_subcommand(name, help)->fallthrough();
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();

    Context ctx;
    ctx.seed = seed;
    try {
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) {
                throw ConfigError("cannot open config " + config_path);
            }
            try {
                ctx.cfg = json::parse(f);
            } catch (const json::exception& e) {
                throw ConfigError(std::string("config is not valid JSON: ") + e.what());
            }
            if (!ctx.cfg.is_object()) {
                throw ConfigError("config must be a JSON object");
            }
            ctx.base = fs::path(config_path).parent_path();
        } else {
            ctx.cfg = json::object();
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    }
    set_thread_count(threads);

    try {
        Output out(out_dir);
        json summary;
        try {
            if (cmd == "graph-cobs") {
                summary = run_graph_cobs(ctx, out);
            } else if (cmd == "spectrum") {
                summary = run_spectrum(ctx, out);
            } else if (cmd == "hum") {
                summary = run_hum(ctx, out);
            } else if (cmd == "optimize") {
                summary = run_optimize(ctx, out);
            } else if (cmd == "sweep") {
                summary = run_sweep(ctx, out);
            } else if (cmd == "power-cobs") {
                summary = run_power(ctx, out);
            } else {
                summary = run_verify(ctx, out);
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            std::string kind = "error";
            if (dynamic_cast<const GocViolation*>(&e)) {
                kind = "goc_violation";
            } else if (dynamic_cast<const IllConditionedHum*>(&e)) {
                kind = "ill_conditioned";
            } else if (dynamic_cast<const DegenerateIterate*>(&e)) {
                kind = "degenerate_iterate";
            }
            const json err = {{"command", cmd}, {"error", e.what()}, {"type", kind}};
            out.write_json("error.json", err);
            out.finish(cmd, seed);
            std::fprintf(stderr, "%s\n", err.dump().c_str());
            return 1;
        }
        out.finish(cmd, seed);
        std::printf("%s\n", summary.dump().c_str());
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    }
    return 0;
}
