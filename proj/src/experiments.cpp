#include "latfluct/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "latfluct/error.hpp"
#include "latfluct/montecarlo.hpp"
#include "latfluct/realspace.hpp"
#include "latfluct/sobolev.hpp"
#include "latfluct/spectral.hpp"

namespace latfluct {
namespace experiments {

std::string method_name(Method m) {
    switch (m) {
        case Method::fourier: return "fourier";
        case Method::realspace: return "realspace";
        case Method::mc: return "mc";
        case Method::bound: return "bound";
    }
    return "?";
}

std::optional<double> ResultRow::rel_error() const {
    if (!target || *target == 0.0) return std::nullopt;
    return std::abs(value - *target) / std::abs(*target);
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Resolved {
    int d;
    double a;
    std::vector<double> grid;
    double eps;
    std::int64_t replicates;
    std::uint64_t seed;
};

Resolved resolve(const ExperimentConfig& cfg, int d, double a, std::vector<double> grid,
                 double eps = 0.1, std::int64_t replicates = 100000) {
    Resolved r;
    r.d = cfg.d > 0 ? cfg.d : d;
    r.a = cfg.a > 0 ? cfg.a : a;
    r.grid = cfg.grid.empty() ? std::move(grid) : cfg.grid;
    r.eps = cfg.eps > 0 ? cfg.eps : eps;
    r.replicates = cfg.replicates > 0 ? cfg.replicates : replicates;
    r.seed = cfg.seed;
    for (double R : r.grid)
        if (!(R > 0)) throw validation_error("grid scales must be positive");
    return r;
}

using Runner = std::function<std::vector<ResultRow>(const ExperimentConfig&)>;

struct Entry {
    ExperimentInfo info;
    Runner run;
};

ResultRow row(const std::string& exp, double R, const std::string& quantity, Method method,
              double value, std::optional<double> target, double err, std::uint64_t seed) {
    ResultRow r;
    r.experiment = exp;
    r.R = R;
    r.quantity = quantity;
    r.method = method;
    r.value = value;
    r.target = target;
    r.error_bound = err;
    r.seed = seed;
    return r;
}

std::vector<ResultRow> run_thm4_smooth(const ExperimentConfig& cfg) {
    const Resolved rc = resolve(cfg, 2, 1.0, {5, 10, 20});
    const auto h = make_gaussian_bump(rc.d);
    const double target = spectral::asymptotic_target_smooth(*h, rc.a);
    const auto quad = spectral::default_quadrature(*h);
    const int m_max = spectral::default_m_max(rc.a);
    std::vector<ResultRow> rows;
    for (double R : rc.grid) {
        const auto var = spectral::variance_exact(*h, R, rc.a, m_max, quad);
        rows.push_back(row(cfg.name, R, "variance", Method::fourier, var.value, target,
                           var.truncation_bound, rc.seed));
        rows.push_back(row(cfg.name, R, "variance", Method::realspace,
                           realspace::variance(*h, R, rc.a), target, 0.0, rc.seed));
    }
    return rows;
}

std::vector<ResultRow> run_thm5_ball(const ExperimentConfig& cfg) {
    const Resolved rc = resolve(cfg, 2, 1.0, {25, 50, 100});
    const ConvexBody ball = make_ball(rc.d, 1.0);
    const auto h = make_ball_indicator(rc.d, 1.0);
    const double target = spectral::asymptotic_target_surface(ball, rc.a);
    std::vector<ResultRow> rows;
    for (double R : rc.grid) {
        const double v = realspace::variance(*h, R, rc.a);
        rows.push_back(row(cfg.name, R, "var/R^(d-1)", Method::realspace,
                           v / std::pow(R, rc.d - 1), target, 0.0, rc.seed));
    }
    return rows;
}

std::vector<ResultRow> run_cube_mean_osc(const ExperimentConfig& cfg) {
    const Resolved rc = resolve(cfg, 1, 0.25, {10, 10.5});
    const auto h = make_cube_indicator(rc.d);
    const int m_max = spectral::default_m_max(rc.a);
    std::vector<ResultRow> rows;
    for (double R : rc.grid) {
        const double vol = std::pow(R, rc.d);
        const auto mean = spectral::mean_exact(*h, R, rc.a, m_max);
        rows.push_back(row(cfg.name, R, "mean-R^d", Method::fourier, mean.value - vol,
                           std::nullopt, mean.truncation_bound, rc.seed));
        rows.push_back(row(cfg.name, R, "mean-R^d", Method::realspace,
                           realspace::mean(*h, R, rc.a) - vol, std::nullopt, 0.0, rc.seed));
    }
    return rows;
}

std::vector<ResultRow> run_cube_stat_blowup(const ExperimentConfig& cfg) {
    const Resolved rc = resolve(cfg, 2, 0.01, {10.5, 20.5, 40.5});
    const auto h = make_cube_indicator(rc.d);
    const auto quad = spectral::default_quadrature(*h);
    const int m_max = spectral::default_m_max(rc.a);
    const double pw = rc.d - 1.0;
    std::vector<ResultRow> rows;
    for (double R : rc.grid) {
        const auto vs = spectral::variance_stationary(*h, R, rc.a, m_max, quad);
        rows.push_back(row(cfg.name, R, "var_s/R^(d-1)", Method::fourier,
                           vs.value / std::pow(R, pw), std::nullopt, vs.truncation_bound,
                           rc.seed));
        rows.push_back(row(cfg.name, R, "var/R^(d-1)", Method::realspace,
                           realspace::variance(*h, R, rc.a) / std::pow(R, pw), std::nullopt,
                           0.0, rc.seed));
    }
    return rows;
}

std::vector<ResultRow> run_sobolev_blowup(const ExperimentConfig& cfg) {
    const Resolved rc = resolve(cfg, 2, 0.05, {8, 16, 32});
    const int m_max = spectral::default_m_max(rc.a);
    double max_r = 0;
    for (double R : rc.grid) max_r = std::max(max_r, R);
    SobolevSpec spec;
    spec.d = rc.d;
    spec.eps = rc.eps;
    spec.M = static_cast<int>(std::ceil(max_r)) * (m_max + 1) + 2;
    const auto h = make_sobolev_g(spec);
    const auto quad = spectral::default_quadrature(*h);
    const double pw = rc.d - 2.0;
    std::vector<ResultRow> rows;
    for (double R : rc.grid) {
        const auto vs = spectral::variance_stationary(*h, R, rc.a, m_max, quad);
        rows.push_back(row(cfg.name, R, "var_s/R^(d-2)", Method::fourier,
                           vs.value / std::pow(R, pw), std::nullopt, vs.truncation_bound,
                           rc.seed));
        double sum_term = 0.0;
        for (const auto& [m, v] : vs.breakdown) {
            bool zero = true;
            for (int i = 0; i < rc.d; ++i) zero = zero && m[i] == 0;
            if (!zero) sum_term += v;
        }
        rows.push_back(row(cfg.name, R, "sum_term/R^(d-2)", Method::fourier,
                           sum_term / std::pow(R, pw), std::nullopt, vs.truncation_bound,
                           rc.seed));
    }
    return rows;
}

std::vector<ResultRow> run_thm2_bound(const ExperimentConfig& cfg) {
    const Resolved rc = resolve(cfg, 2, 1.0, {2, 5, 10, 20, 50});
    const int m_max = spectral::default_m_max(rc.a);
    std::vector<ResultRow> rows;
    for (const char* key_cstr : {"gauss:pi", "cube", "ball:r=1"}) {
        const std::string key = key_cstr;
        const auto h = make_test_function(key, rc.d);
        for (double R : rc.grid) {
            double var;
            Method var_method;
            if (h->is_indicator()) {
                var = realspace::variance(*h, R, rc.a);
                var_method = Method::realspace;
            } else {
                var = spectral::variance_exact(*h, R, rc.a, m_max,
                                               spectral::default_quadrature(*h))
                          .value;
                var_method = Method::fourier;
            }
            const double bound = spectral::upper_bound_functional(*h, R);
            rows.push_back(
                row(cfg.name, R, key + ":var", var_method, var, std::nullopt, 0.0, rc.seed));
            rows.push_back(
                row(cfg.name, R, key + ":B", Method::bound, bound, std::nullopt, 0.0, rc.seed));
            rows.push_back(row(cfg.name, R, key + ":var/B", Method::bound, var / bound,
                               std::nullopt, 0.0, rc.seed));
        }
    }
    return rows;
}

std::vector<ResultRow> run_avg_var_identity(const ExperimentConfig& cfg) {
    const Resolved rc = resolve(cfg, 1, 1.0, {1, 3.5, 10});
    std::vector<ResultRow> rows;
    struct Case {
        ConvexBody body;
        double R;
    };
    std::vector<Case> cases;
    for (double R : rc.grid) {
        cases.push_back({make_cube(1), R});
        cases.push_back({make_ball(1, 1.0), R});
    }
    cases.push_back({make_ball(2, 1.0), 10.0});
    const int m_max = spectral::default_m_max(rc.a);
    for (const auto& c : cases) {
        const auto h = make_indicator(c.body);
        const std::string tag =
            (c.body.shape == Shape::cube ? "cube" : "ball") + std::string(":d=") +
            std::to_string(c.body.d);
        const int order = c.body.d == 2 ? 24 : 16;
        const double avg = realspace::averaged_variance(c.body, c.R, rc.a, order);
        const auto vs = spectral::variance_stationary(*h, c.R, rc.a, m_max,
                                                      spectral::default_quadrature(*h));
        double a0 = 0.0;
        for (const auto& [m, v] : vs.breakdown) {
            bool zero = true;
            for (int i = 0; i < c.body.d; ++i) zero = zero && m[i] == 0;
            if (zero) a0 = v;
        }
        rows.push_back(row(cfg.name, c.R, tag + ":avg_var", Method::realspace, avg, a0, 0.0,
                           rc.seed));
        rows.push_back(row(cfg.name, c.R, tag + ":A0", Method::fourier, a0, std::nullopt,
                           vs.truncation_bound, rc.seed));
    }
    return rows;
}

std::vector<ResultRow> run_ball_mean_trend(const ExperimentConfig& cfg) {
    const Resolved rc = resolve(cfg, 2, 1.0, {10, 20, 50, 100});
    const ConvexBody ball = make_ball(rc.d, 1.0);
    const auto h = make_ball_indicator(rc.d, 1.0);
    const int m_max = spectral::default_m_max(rc.a);
    std::vector<ResultRow> rows;
    for (double R : rc.grid) {
        const double vol = ball.volume() * std::pow(R, rc.d);
        const double scale = std::pow(R, 0.5 * (rc.d - 1));
        rows.push_back(row(cfg.name, R, "|mean-volR^d|/R^((d-1)/2)", Method::realspace,
                           std::abs(realspace::mean(*h, R, rc.a) - vol) / scale, std::nullopt,
                           0.0, rc.seed));
        const auto mean = spectral::mean_exact(*h, R, rc.a, m_max);
        rows.push_back(row(cfg.name, R, "|mean-volR^d|/R^((d-1)/2)", Method::fourier,
                           std::abs(mean.value - vol) / scale, std::nullopt,
                           mean.truncation_bound / scale, rc.seed));
    }
    return rows;
}

const std::vector<Entry>& registry() {
    static const std::vector<Entry> entries = {
        {{"thm4-smooth",
          "variance of a smooth statistic (gauss:pi) against its H^1 limit",
          "Var(N(h,R))/R^(d-2) -> (a/2) int |grad h|^2"},
         run_thm4_smooth},
        {{"thm5-ball",
          "hyperuniform count variance for the ball against the surface-area law",
          "Var(n(K_R))/R^(d-1) -> sqrt(a/(2 pi)) sigma(dK)"},
         run_thm5_ball},
        {{"cube-mean-osc",
          "oscillation of the mean count remainder for the cube on half-integer scales",
          "E n(Q_R) - R^d = R^(d-1) * 2d sum_l e^(-a pi^2 l^2) sin(pi R l)/(pi l) + O(R^(d-2))"},
         run_cube_mean_osc},
        {{"cube-stat-blowup",
          "stationarized cube variance outgrowing the surface-area scale",
          "limsup Var_s(n(Q_R))/R^(d-1) = +inf (lattice resonances of the sinc transform)"},
         run_cube_stat_blowup},
        {{"sobolev-blowup",
          "stationarized variance of an H^1 function outgrowing the smooth-statistic scale",
          "limsup Var_s(N(g,R))/R^(d-2) = +inf for Fourier-bump g in L^1 cap H^1"},
         run_sobolev_blowup},
        {{"thm2-bound",
          "variance against the interpolation bound B(h,R); ratio stays bounded",
          "Var(N(h,R)) <= C [R^(d-2) int_(|l|<=R) |hhat|^2 |l|^2 + R^d int_(|l|>=R) |hhat|^2]"},
         run_thm2_bound},
        {{"avg-var-identity",
          "translation-averaged count variance equals the continuum spectral term",
          "int_([0,1]^d) Var(n(K_R+x)) dx = R^d int |1K hat|^2 (1 - e^(-2 a pi^2 |l|^2/R^2))"},
         run_avg_var_identity},
        {{"ball-mean-trend",
          "mean count remainder for the ball stays at the curvature scale R^((d-1)/2)",
          "|E n(K_R) - vol(K) R^d| = O(R^((d-1)/2))"},
         run_ball_mean_trend},
    };
    return entries;
}

} // namespace

std::vector<ExperimentInfo> list_experiments() {
    std::vector<ExperimentInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
    for (const auto& e : registry())
        if (e.info.name == cfg.name) return e.run(cfg);
    std::string msg = "unknown experiment '" + cfg.name + "'; registry:";
    for (const auto& e : registry()) msg += " " + e.info.name;
    throw validation_error(msg);
}

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
    os << "experiment,R,quantity,method,value,target,rel_error,error_bound,seed\n";
    for (const auto& r : rows) {
        os << r.experiment << ',' << fmt(r.R) << ',' << r.quantity << ','
           << method_name(r.method) << ',' << fmt(r.value) << ','
           << (r.target ? fmt(*r.target) : "") << ','
           << (r.rel_error() ? fmt(*r.rel_error()) : "") << ',' << fmt(r.error_bound) << ','
           << r.seed << '\n';
    }
}

void write_json(std::ostream& os, const std::vector<ResultRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json o;
        o["experiment"] = r.experiment;
        o["R"] = r.R;
        o["quantity"] = r.quantity;
        o["method"] = method_name(r.method);
        o["value"] = r.value;
        o["target"] = r.target ? nlohmann::json(*r.target) : nlohmann::json();
        o["rel_error"] = r.rel_error() ? nlohmann::json(*r.rel_error()) : nlohmann::json();
        o["error_bound"] = r.error_bound;
        o["seed"] = r.seed;
        arr.push_back(o);
    }
    os << arr.dump(2) << '\n';
}

namespace {

void emit(const std::vector<ResultRow>& rows, const std::string& out_path,
          const std::string& format, std::ostream& fallback) {
    std::ofstream file;
    std::ostream* os = &fallback;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw validation_error("cannot open output file: " + out_path);
        os = &file;
    }
    if (format == "json")
        write_json(*os, rows);
    else
        write_csv(*os, rows);
}

// Direct calculators: mean | variance | mc on one catalog function.
std::vector<ResultRow> run_calc(const std::string& what, const std::string& shape, int d,
                                double a, double R, bool stationary, std::int64_t replicates,
                                std::uint64_t seed) {
    const auto h = make_test_function(shape, d);
    const int m_max = spectral::default_m_max(a);
    std::vector<ResultRow> rows;
    const std::string exp = "calc-" + what;
    if (what == "mean") {
        if (stationary) {
            rows.push_back(row(exp, R, shape + ":mean_s", Method::fourier,
                               spectral::mean_stationary(*h, R), std::nullopt, 0.0, seed));
        } else {
            const auto m = spectral::mean_exact(*h, R, a, m_max);
            rows.push_back(row(exp, R, shape + ":mean", Method::fourier, m.value, std::nullopt,
                               m.truncation_bound, seed));
            if (h->has_realspace())
                rows.push_back(row(exp, R, shape + ":mean", Method::realspace,
                                   realspace::mean(*h, R, a), std::nullopt, 0.0, seed));
        }
        return rows;
    }
    if (what == "variance") {
        if (stationary) {
            const auto v = spectral::variance_stationary(*h, R, a, m_max,
                                                         spectral::default_quadrature(*h));
            rows.push_back(row(exp, R, shape + ":var_s", Method::fourier, v.value, std::nullopt,
                               v.truncation_bound, seed));
            if (h->has_realspace() && d <= 2)
                rows.push_back(row(exp, R, shape + ":var_s", Method::realspace,
                                   realspace::variance_stationary(*h, R, a), std::nullopt, 0.0,
                                   seed));
        } else {
            const auto v =
                spectral::variance_exact(*h, R, a, m_max, spectral::default_quadrature(*h));
            rows.push_back(row(exp, R, shape + ":var", Method::fourier, v.value, std::nullopt,
                               v.truncation_bound, seed));
            if (h->has_realspace())
                rows.push_back(row(exp, R, shape + ":var", Method::realspace,
                                   realspace::variance(*h, R, a), std::nullopt, 0.0, seed));
        }
        return rows;
    }
    // mc
    ProcessConfig cfg;
    cfg.d = d;
    cfg.a = a;
    cfg.R = R;
    cfg.kind = stationary ? ProcessKind::stationarized : ProcessKind::perturbed;
    const auto est = run_mc(cfg, *h, replicates, seed);
    const double exact_mean =
        stationary ? spectral::mean_stationary(*h, R)
                   : spectral::mean_exact(*h, R, a, m_max).value;
    const double exact_var = stationary ? realspace::variance_stationary(*h, R, a)
                                        : realspace::variance(*h, R, a);
    const auto z = zscore(est, exact_mean, exact_var);
    rows.push_back(row(exp, R, shape + ":mean", Method::mc, est.mean, exact_mean, est.se_mean,
                       seed));
    rows.push_back(row(exp, R, shape + ":variance", Method::mc, est.variance, exact_var,
                       est.se_variance, seed));
    rows.push_back(row(exp, R, shape + ":z_mean", Method::mc, z.z_mean, std::nullopt, 0.0, seed));
    rows.push_back(
        row(exp, R, shape + ":z_variance", Method::mc, z.z_variance, std::nullopt, 0.0, seed));
    return rows;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"linear statistics of Gaussian-perturbed lattices"};
    app.require_subcommand(1);

    auto* list_cmd = app.add_subcommand("list", "list registered experiments");

    auto* run_cmd = app.add_subcommand("run", "run a registered experiment");
    std::string run_name;
    ExperimentConfig cfg;
    std::string grid_arg, out_path, format = "csv";
    run_cmd->add_option("name", run_name, "experiment name")->required();
    run_cmd->add_option("--d", cfg.d, "dimension override");
    run_cmd->add_option("--a", cfg.a, "dispersion override");
    run_cmd->add_option("--grid", grid_arg, "comma-separated R grid");
    run_cmd->add_option("--eps", cfg.eps, "sobolev-g epsilon");
    run_cmd->add_option("--replicates", cfg.replicates, "Monte Carlo replicates");
    run_cmd->add_option("--seed", cfg.seed, "random seed");
    run_cmd->add_option("--out", out_path, "output path (default stdout)");
    run_cmd->add_option("--format", format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    std::string calc_shape;
    int calc_d = 1;
    double calc_a = 1.0, calc_R = 1.0;
    bool calc_stationary = false;
    std::int64_t calc_replicates = 100000;
    std::uint64_t calc_seed = 2026;
    std::string calc_out, calc_format = "csv";
    std::vector<CLI::App*> calc_cmds;
    for (const std::string name : {"mean", "variance", "mc"}) {
        auto* c = app.add_subcommand(name, "direct calculator");
        c->add_option("--shape", calc_shape, "catalog key")->required();
        c->add_option("--d", calc_d, "dimension")->required();
        c->add_option("--a", calc_a, "dispersion")->required();
        c->add_option("--R", calc_R, "scale")->required();
        c->add_flag("--stationary", calc_stationary, "stationarized process");
        c->add_option("--replicates", calc_replicates, "Monte Carlo replicates");
        c->add_option("--seed", calc_seed, "random seed");
        c->add_option("--out", calc_out, "output path (default stdout)");
        c->add_option("--format", calc_format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        calc_cmds.push_back(c);
    }

    std::vector<const char*> argv;
    argv.push_back("latstat");
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (list_cmd->parsed()) {
            for (const auto& info : list_experiments())
                out << info.name << "\t" << info.description << "\t[" << info.anchor << "]\n";
            return 0;
        }
        if (run_cmd->parsed()) {
            cfg.name = run_name;
            if (!grid_arg.empty()) {
                std::stringstream ss(grid_arg);
                std::string item;
                while (std::getline(ss, item, ',')) cfg.grid.push_back(std::stod(item));
            }
            emit(run_experiment(cfg), out_path, format, out);
            return 0;
        }
        for (std::size_t i = 0; i < calc_cmds.size(); ++i) {
            if (!calc_cmds[i]->parsed()) continue;
            const std::string what = i == 0 ? "mean" : i == 1 ? "variance" : "mc";
            emit(run_calc(what, calc_shape, calc_d, calc_a, calc_R, calc_stationary,
                          calc_replicates, calc_seed),
                 calc_out, calc_format, out);
            return 0;
        }
        err << "error: no subcommand\n";
        return 2;
    } catch (const spectral::NonConvergenceError& e) {
        err << "non-convergence: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.kind() == Error::Kind::non_convergence ? 3 : 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace experiments
} // namespace latfluct
