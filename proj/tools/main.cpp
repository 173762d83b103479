#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "winding_atlas/errors.hpp"
#include "winding_atlas/path_sim.hpp"
#include "winding_atlas/report.hpp"
#include "winding_atlas/specfun.hpp"
#include "winding_atlas/validate.hpp"
#include "winding_atlas/version.hpp"
#include "winding_atlas/winding_analytics.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using watlas::report::format_double;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitNumerical = 4;

unsigned default_threads() {
    if (const char* env = std::getenv("WINDING_ATLAS_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 0;  // hardware concurrency
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << content;
}

json manifest_base(const std::string& command, std::uint64_t seed, const json& config,
                   const std::string& started) {
    return json{{"command", command},
                {"config", config},
                {"tool_version", watlas::kToolVersion},
                {"master_seed", seed},
                {"started", started},
                {"finished", watlas::report::timestamp_utc()},
                {"partial", false}};
}

// JSON config file values fill in any flag the user did not pass explicitly.
template <typename T>
void config_fill(const CLI::App& cmd, const json& cfg, const std::string& key, T& value) {
    const CLI::Option* opt = cmd.get_option("--" + key);
    if (opt != nullptr && opt->count() > 0) return;  // flags override file values
    if (cfg.contains(key)) value = cfg.at(key).get<T>();
}

struct SimulateOptions {
    std::vector<int> m_list{1};
    std::int64_t steps = 10000;
    std::size_t samples = 100;
    std::uint64_t seed = 0;
    unsigned threads = default_threads();
    std::string out = ".";
    int nmax = 8;
    std::string config_file;
};

int cmd_simulate(const SimulateOptions& opt) {
    const std::string started = watlas::report::timestamp_utc();
    fs::create_directories(opt.out);

    std::vector<watlas::report::CsvRow> est_rows{
        {"m", "n_steps", "t_eff", "observable", "mean", "stderr", "n_samples"}};
    std::vector<watlas::report::CsvRow> sec_rows{{"m", "n", "mean_area_over_t", "stderr"}};

    bool partial = false;
    std::string failure;
    for (int m : opt.m_list) {
        watlas::ExperimentConfig cfg;
        cfg.m = m;
        cfg.n_steps = opt.steps;
        cfg.n_samples = opt.samples;
        cfg.master_seed = opt.seed;
        cfg.n_max = opt.nmax;
        cfg.n_threads = opt.threads;
        try {
            const watlas::ExperimentResult res = watlas::run_experiment(cfg);
            for (const auto& [name, est] : res.observables)
                est_rows.push_back({std::to_string(m), std::to_string(opt.steps),
                                    format_double(cfg.t_eff()), name, format_double(est.mean),
                                    format_double(est.stderr_), std::to_string(est.n_samples)});
            for (const auto& [n, est] : res.sector_area_over_t)
                sec_rows.push_back({std::to_string(m), std::to_string(n),
                                    format_double(est.mean), format_double(est.stderr_)});
            if (res.failed_samples > 0)
                std::cerr << "warning: m=" << m << ": " << res.failed_samples
                          << " sample(s) failed and were skipped\n";
        } catch (const watlas::ResourceError& e) {
            partial = true;
            failure = e.what();
            break;
        }
    }

    write_file(fs::path(opt.out) / "estimates.csv", watlas::report::to_csv(est_rows));
    write_file(fs::path(opt.out) / "sectors.csv", watlas::report::to_csv(sec_rows));

    json config{{"m", opt.m_list}, {"steps", opt.steps},   {"samples", opt.samples},
                {"seed", opt.seed}, {"threads", opt.threads}, {"out", opt.out},
                {"nmax", opt.nmax}};
    json manifest = manifest_base("simulate", opt.seed, config, started);
    manifest["partial"] = partial;
    if (partial) manifest["failure"] = failure;
    write_file(fs::path(opt.out) / "manifest.json", manifest.dump(2) + "\n");

    if (partial) {
        std::cerr << "error: " << failure << "\n";
        return kExitResource;
    }
    return kExitOk;
}

struct AnalyticOptions {
    bool fig1 = false;
    bool fig2 = false;
    std::vector<int> m_list{4, 8, 16, 32, 64, 128, 256, 512, 1024};
    double tol = 1e-9;
    bool svg = false;
    std::string out = ".";
    std::string config_file;
};

int cmd_analytic(const AnalyticOptions& opt) {
    const std::string started = watlas::report::timestamp_utc();
    fs::create_directories(opt.out);
    watlas::QuadratureSpec quad;
    quad.abs_tol = opt.tol;
    quad.rel_tol = opt.tol;

    if (opt.fig1) {
        std::vector<watlas::report::CsvRow> rows{{"m", "A_prime", "density"}};
        std::vector<watlas::report::Series> series;
        const struct {
            const char* label;
            double (*density)(double);
        } curves[] = {
            // m=1 rescaled is Levy's law at t = 1.
            {"1", [](double a) { return watlas::levy_density(a, 1.0); }},
            {"2", &watlas::p2_rescaled},
            {"3", &watlas::p3_rescaled},
            {"inf", &watlas::pinf_rescaled},
        };
        for (const auto& curve : curves) {
            watlas::report::Series s;
            s.label = std::string("m=") + curve.label;
            for (int i = 0; i <= 300; ++i) {
                const double a = -1.5 + 0.01 * i;
                const double d = curve.density(a);
                rows.push_back({curve.label, format_double(a), format_double(d)});
                s.points.emplace_back(a, d);
            }
            series.push_back(std::move(s));
        }
        write_file(fs::path(opt.out) / "fig1.csv", watlas::report::to_csv(rows));
        if (opt.svg) {
            watlas::report::PlotSpec plot;
            plot.title = "Rescaled algebraic-area density";
            plot.x_label = "A' = A/(t sqrt(m))";
            plot.y_label = "P_m(A')";
            write_file(fs::path(opt.out) / "fig1.svg",
                       watlas::report::render_svg(plot, series));
        }
    }

    if (opt.fig2) {
        std::vector<watlas::report::CsvRow> rows{{"m", "quantity", "value"}};
        watlas::report::Series quad_s{"quadrature", {}, true};
        watlas::report::Series lead_s{"(pi/2) ln m", {}, false};
        watlas::report::Series sub_s{"with subleading terms", {}, false};
        for (int m : opt.m_list) {
            const double v = watlas::mean_total_minus_zero(m, 1.0, quad);
            rows.push_back({std::to_string(m), "quadrature_S_minus_S0_over_t", format_double(v)});
            quad_s.points.emplace_back(m, v);
            if (m >= 2) {
                const double lead = watlas::asymptotic_leading(m, 1.0);
                rows.push_back({std::to_string(m), "leading", format_double(lead)});
                lead_s.points.emplace_back(m, lead);
            }
            if (m >= 3) {
                const double sub = watlas::asymptotic_subleading(m, 1.0);
                rows.push_back({std::to_string(m), "subleading", format_double(sub)});
                sub_s.points.emplace_back(m, sub);
            }
        }
        write_file(fs::path(opt.out) / "fig2_curves.csv", watlas::report::to_csv(rows));
        if (opt.svg) {
            watlas::report::PlotSpec plot;
            plot.title = "Mean arithmetic area of m paths";
            plot.x_label = "m";
            plot.y_label = "<S(m)-S0(m)>/t";
            plot.log_x = true;
            write_file(fs::path(opt.out) / "fig2.svg",
                       watlas::report::render_svg(plot, {quad_s, lead_s, sub_s}));
        }
    }

    json config{{"fig1", opt.fig1}, {"fig2-curves", opt.fig2}, {"m-list", opt.m_list},
                {"tol", opt.tol},   {"svg", opt.svg},          {"out", opt.out}};
    write_file(fs::path(opt.out) / "manifest.json",
               manifest_base("analytic", 0, config, started).dump(2) + "\n");
    return kExitOk;
}

struct ValidateOptions {
    bool full = false;
    std::size_t samples = 2000;
    std::int64_t steps = 100000;
    std::uint64_t seed = 20260824;
    unsigned threads = default_threads();
    std::string json_out;
    std::string config_file;
};

int cmd_validate(const ValidateOptions& opt) {
    watlas::validate::McScale scale;
    scale.steps = opt.steps;
    scale.samples_means = opt.samples;
    scale.samples_distribution = 5 * opt.samples;
    scale.samples_cross = std::max<std::size_t>(100, opt.samples / 4);
    scale.seed = opt.seed;
    scale.threads = opt.threads;

    const std::vector<watlas::validate::Criterion> criteria =
        opt.full ? watlas::validate::full_suite(scale) : watlas::validate::quick_suite();

    json jreport{{"tool_version", watlas::kToolVersion},
                 {"mode", opt.full ? "full" : "quick"},
                 {"criteria", json::array()}};
    bool all_passed = true;
    for (const auto& cr : criteria) {
        const bool ok = cr.passed();
        all_passed = all_passed && ok;
        std::cout << "[" << (ok ? "PASS" : "FAIL") << "] " << cr.id << ": " << cr.summary << "\n";
        json jchecks = json::array();
        for (const auto& c : cr.checks) {
            if (!c.passed)
                std::cout << "       check '" << c.name << "': observed " << c.observed
                          << ", expected " << c.expected << ", tolerance " << c.tolerance
                          << "\n";
            jchecks.push_back({{"name", c.name},
                               {"passed", c.passed},
                               {"observed", c.observed},
                               {"expected", c.expected},
                               {"tolerance", c.tolerance}});
        }
        jreport["criteria"].push_back(
            {{"id", cr.id}, {"summary", cr.summary}, {"passed", ok}, {"checks", jchecks}});
    }
    jreport["passed"] = all_passed;
    if (!opt.json_out.empty()) write_file(opt.json_out, jreport.dump(2) + "\n");
    std::cout << (all_passed ? "all checks passed" : "some checks FAILED") << "\n";
    return all_passed ? kExitOk : kExitValidationFailure;
}

json load_config_file(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream is(path);
    if (!is) throw CLI::ValidationError("--config", "cannot read " + path);
    json cfg;
    is >> cfg;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(watlas::kToolName) +
                 ": winding sectors and enclosed areas of closed planar random walks"};
    app.set_version_flag("--version", watlas::kToolVersion);
    app.require_subcommand(1);

    SimulateOptions sim;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "Monte Carlo estimates of sector/area observables");
    simulate->add_option("--m", sim.m_list, "path counts, comma separated")->delimiter(',');
    simulate->add_option("--steps", sim.steps, "walk length N (even)");
    simulate->add_option("--samples", sim.samples, "number of independent samples");
    simulate->add_option("--seed", sim.seed, "master seed");
    simulate->add_option("--threads", sim.threads,
                         "worker threads (0 = all cores; default from WINDING_ATLAS_THREADS)");
    simulate->add_option("--out", sim.out, "output directory");
    simulate->add_option("--nmax", sim.nmax, "sector index cap for sectors.csv");
    simulate->add_option("--config", sim.config_file, "JSON config file (flags override)");

    AnalyticOptions ana;
    CLI::App* analytic = app.add_subcommand(
        "analytic", "closed-form/quadrature curves and figure data");
    analytic->add_flag("--fig1", ana.fig1, "emit rescaled area densities (fig1.csv)");
    analytic->add_flag("--fig2-curves", ana.fig2, "emit <S(m)-S0(m)>/t curves (fig2_curves.csv)");
    analytic->add_option("--m-list", ana.m_list, "m values for --fig2-curves")->delimiter(',');
    analytic->add_option("--tol", ana.tol, "quadrature tolerance");
    analytic->add_flag("--svg", ana.svg, "also render fig1.svg/fig2.svg");
    analytic->add_option("--out", ana.out, "output directory");
    analytic->add_option("--config", ana.config_file, "JSON config file (flags override)");

    ValidateOptions val;
    CLI::App* validate = app.add_subcommand("validate", "run the built-in check suites");
    validate->add_flag("--quick", "analytic checks only (default)");
    validate->add_flag("--full", val.full, "include the Monte Carlo checks");
    validate->add_option("--samples", val.samples, "MC samples for the mean checks");
    validate->add_option("--steps", val.steps, "walk length N for the MC checks");
    validate->add_option("--seed", val.seed, "master seed for the MC checks");
    validate->add_option("--threads", val.threads, "worker threads (0 = all cores)");
    validate->add_option("--json", val.json_out, "write the JSON report to this file");
    validate->add_option("--config", val.config_file, "JSON config file (flags override)");

    try {
        app.parse(argc, argv);

        if (simulate->parsed()) {
            const json cfg = load_config_file(sim.config_file);
            config_fill(*simulate, cfg, "m", sim.m_list);
            config_fill(*simulate, cfg, "steps", sim.steps);
            config_fill(*simulate, cfg, "samples", sim.samples);
            config_fill(*simulate, cfg, "seed", sim.seed);
            config_fill(*simulate, cfg, "threads", sim.threads);
            config_fill(*simulate, cfg, "out", sim.out);
            config_fill(*simulate, cfg, "nmax", sim.nmax);
            return cmd_simulate(sim);
        }
        if (analytic->parsed()) {
            const json cfg = load_config_file(ana.config_file);
            config_fill(*analytic, cfg, "fig1", ana.fig1);
            config_fill(*analytic, cfg, "fig2-curves", ana.fig2);
            config_fill(*analytic, cfg, "m-list", ana.m_list);
            config_fill(*analytic, cfg, "tol", ana.tol);
            config_fill(*analytic, cfg, "svg", ana.svg);
            config_fill(*analytic, cfg, "out", ana.out);
            return cmd_analytic(ana);
        }
        const json cfg = load_config_file(val.config_file);
        config_fill(*validate, cfg, "full", val.full);
        config_fill(*validate, cfg, "samples", val.samples);
        config_fill(*validate, cfg, "steps", val.steps);
        config_fill(*validate, cfg, "seed", val.seed);
        config_fill(*validate, cfg, "threads", val.threads);
        config_fill(*validate, cfg, "json", val.json_out);
        return cmd_validate(val);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    } catch (const watlas::ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return kExitResource;
    } catch (const watlas::ConvergenceError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
