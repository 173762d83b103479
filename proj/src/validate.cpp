#include "winding_atlas/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <unordered_map>

#include "winding_atlas/path_sim.hpp"
#include "winding_atlas/quadrature.hpp"
#include "winding_atlas/specfun.hpp"
#include "winding_atlas/winding_analytics.hpp"

namespace watlas {
namespace validate {

namespace {

constexpr double kPi = 3.14159265358979323846;

CheckResult abs_check(std::string name, double observed, double expected, double tol) {
    return {std::move(name), std::abs(observed - expected) <= tol, observed, expected, tol};
}

CheckResult rel_check(std::string name, double observed, double expected, double rel_tol) {
    const double tol = rel_tol * std::abs(expected);
    return {std::move(name), std::abs(observed - expected) <= tol, observed, expected, tol};
}

// max(3 stderr, frac |expected|) tolerance for lattice-vs-continuum comparisons.
CheckResult mc_check(std::string name, const MCEstimate& est, double expected, double frac) {
    const double tol = std::max(3.0 * est.stderr_, frac * std::abs(expected));
    return {std::move(name), std::abs(est.mean - expected) <= tol, est.mean, expected, tol};
}

// Regularized upper incomplete gamma Q(a, x); series/continued-fraction split.
double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) return 0.0;
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) {
        // P by series, Q = 1 - P.
        double term = 1.0 / a, sum = term;
        for (int n = 1; n < 10000; ++n) {
            term *= x / (a + n);
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-15) break;
        }
        return 1.0 - sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    // Q by Lentz continued fraction.
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double levy_cdf(double a) { return 0.5 * (1.0 + std::tanh(kPi * a)); }

}  // namespace

bool Criterion::passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.passed; });
}

Criterion check_z_alpha_closed_form() {
    Criterion cr{"A1", "Z_alpha(1) matches pi t alpha(1-alpha)", {}};
    for (int i = 1; i <= 9; ++i) {
        const double alpha = 0.1 * i;
        char name[64];
        std::snprintf(name, sizeof(name), "z_alpha(1, %.1f, 1)", alpha);
        cr.checks.push_back(abs_check(name, z_alpha(1, alpha, 1.0),
                                      kPi * alpha * (1.0 - alpha), 1e-6));
    }
    return cr;
}

Criterion check_sector_means_one_path() {
    Criterion cr{"A2", "one-path sector means", {}};
    cr.checks.push_back(
        abs_check("mean_total_minus_zero(1,1)", mean_total_minus_zero(1, 1.0), kPi / 6.0, 1e-6));
    for (int n = 1; n <= 3; ++n) {
        char name[64];
        std::snprintf(name, sizeof(name), "mean_sector_area(%d,1,1)", n);
        cr.checks.push_back(rel_check(name, mean_sector_area(n, 1, 1.0),
                                      1.0 / (2.0 * kPi * n * n), 1e-5));
    }
    return cr;
}

Criterion check_area_density_consistency() {
    Criterion cr{"A3", "algebraic-area density: series vs quadrature vs closed forms", {}};
    const SeriesTolerance tol{1e-10, 2000000};
    for (int m : {1, 2, 3, 5}) {
        const double sigma = std::sqrt(m / 12.0);
        double max_dev_quad = 0.0, max_dev_closed = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double a = -5.0 * sigma + 10.0 * sigma * i / 49.0;
            const AreaDensityParams p{m, 1.0, a};
            const double series = pm_density_series(p, tol);
            max_dev_quad = std::max(max_dev_quad, std::abs(series - pm_density_quad(p)));
            if (m == 2)
                max_dev_closed = std::max(
                    max_dev_closed,
                    std::abs(series - p2_rescaled(p.rescaled_area()) / std::sqrt(2.0)));
            if (m == 3)
                max_dev_closed = std::max(
                    max_dev_closed,
                    std::abs(series - p3_rescaled(p.rescaled_area()) / std::sqrt(3.0)));
        }
        char name[96];
        std::snprintf(name, sizeof(name), "max |series - quad|, m=%d, 50 pts +-5 sigma", m);
        cr.checks.push_back(abs_check(name, max_dev_quad, 0.0, 1e-8));
        if (m == 2 || m == 3) {
            std::snprintf(name, sizeof(name), "max |series - closed form|, m=%d", m);
            cr.checks.push_back(abs_check(name, max_dev_closed, 0.0, 1e-8));
        }

        const double span = 6.0 + 5.0 * sigma;  // density decays like e^{-2 pi |A|/t}
        const auto density = [m, &tol](double a) {
            return pm_density_series({m, 1.0, a}, tol);
        };
        const double norm = quad::adaptive(density, -span, span, 1e-9, 1e-8, 20000);
        std::snprintf(name, sizeof(name), "normalization, m=%d", m);
        cr.checks.push_back(abs_check(name, norm, 1.0, 1e-6));

        if (m <= 3) {
            const auto second = [m, &tol](double a) {
                return a * a * pm_density_series({m, 1.0, a}, tol);
            };
            const double var = quad::adaptive(second, -span, span, 1e-9, 1e-8, 20000);
            std::snprintf(name, sizeof(name), "variance, m=%d", m);
            cr.checks.push_back(abs_check(name, var, pm_variance(m, 1.0), 1e-5));
        }
    }
    return cr;
}

Criterion check_g_alpha_consistency() {
    Criterion cr{"A4", "G_alpha: series vs U-integral, tail, small-x", {}};
    for (double alpha : {0.3, 0.5, 0.7}) {
        for (double x : {0.5, 2.0, 5.0}) {
            const auto dg = [alpha](double xp) { return g_alpha_deriv(alpha, xp); };
            const double integral = quad::adaptive(dg, 0.0, x, 1e-9, 1e-9, 20000);
            char name[64];
            std::snprintf(name, sizeof(name), "G(%.1f,%.1f) vs integral of dG/dx", alpha, x);
            cr.checks.push_back(abs_check(name, g_alpha(alpha, x), integral, 1e-6));
        }
    }
    // The leading tail overshoots 1-G by 1/(4x) + O(1/x^2) = 1.25% at x = 20
    // (Laplace expansion of the complement integral), so the band is 1.5%.
    cr.checks.push_back(rel_check("tail form vs 1-G at x=20, alpha=0.5",
                                  g_alpha_tail(0.5, 20.0), g_alpha_complement(0.5, 20.0),
                                  0.015));
    // Two leading small-x orders: (x/2)^a/Gamma(1+a) + (x/2)^{1-a}/Gamma(2-a).
    // At x = 0.01 the reflected order is a ~6% contribution, so the single
    // power alone does not reach the 2% band.
    cr.checks.push_back(rel_check(
        "small-x form at x=0.01, alpha=0.25", g_alpha(0.25, 0.01),
        std::pow(0.005, 0.25) / std::tgamma(1.25) +
            std::pow(0.005, 0.75) / std::tgamma(1.75),
        0.02));
    return cr;
}

// Winding-resolved sector areas converge to their continuum values only
// logarithmically in the walk length: sectors thinner than one lattice cell
// are unresolved, which depletes the wound area and, through the exact
// identity S0 = S - (S - S0), inflates S0 by the same absolute amount.  The
// measured systematic across N = 1.25e4..2e5 fits kappa/ln t, so those
// checks carry an explicit lattice-bias allowance on top of the 5% band
// (the distributional check below has the analogous +0.01 KS allowance).
// S itself, the algebraic area, and the convex hull converge fast and get
// no allowance beyond the base band.
double lattice_band(double kappa, double t) { return 0.05 + kappa / std::log(t); }

Criterion check_mc_one_path_means(const McScale& scale) {
    Criterion cr{"A5", "one-path arithmetic-area means (Monte Carlo)", {}};
    ExperimentConfig cfg;
    cfg.m = 1;
    cfg.n_steps = scale.steps;
    cfg.n_samples = scale.samples_means;
    cfg.master_seed = scale.seed;
    cfg.n_max = 1;
    cfg.n_threads = scale.threads;
    const double t = cfg.t_eff();
    const ExperimentResult res = run_experiment(cfg);
    cr.checks.push_back(mc_check("<S-S0>/t vs pi/6", res.observables.at("S_minus_S0_over_t"),
                                 kPi / 6.0, lattice_band(0.8, t)));
    cr.checks.push_back(
        mc_check("<S>/t vs pi/5", res.observables.at("S_over_t"), kPi / 5.0, 0.05));
    cr.checks.push_back(mc_check("<S0>/t vs pi/30", res.observables.at("S0_over_t"), kPi / 30.0,
                                 lattice_band(2.6, t)));
    cr.checks.push_back(mc_check("<S1>/t vs 1/(2 pi)", res.sector_area_over_t.at(1),
                                 1.0 / (2.0 * kPi), lattice_band(1.3, t)));
    // Closed-path (bridge) convex-hull constant; pi t/2 is the open-path one.
    cr.checks.push_back(
        mc_check("<S_hull>/t vs pi/3", res.observables.at("hull_over_t"), kPi / 3.0, 0.05));
    return cr;
}

Criterion check_mc_levy_distribution(const McScale& scale) {
    Criterion cr{"A6", "algebraic-area law vs Levy (KS) and variance", {}};
    const std::size_t n = scale.samples_distribution;
    const ClosedWalkSampler sampler(scale.steps);
    const double t = static_cast<double>(scale.steps) / 2.0;

    std::vector<double> a_over_t(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng(substream_seed(scale.seed + 1, i));
        a_over_t[i] = static_cast<double>(algebraic_area(sampler.sample(rng))) / t;
    }
    std::sort(a_over_t.begin(), a_over_t.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = levy_cdf(a_over_t[i]);
        ks = std::max(ks, std::abs(static_cast<double>(i + 1) / n - f));
        ks = std::max(ks, std::abs(static_cast<double>(i) / n - f));
    }
    const double ks_limit = 1.63 / std::sqrt(static_cast<double>(n)) + 0.01;
    cr.checks.push_back({"KS distance of A/t vs Levy CDF", ks <= ks_limit, ks, 0.0, ks_limit});

    double mean = 0.0;
    for (double v : a_over_t) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0, m4 = 0.0;
    for (double v : a_over_t) {
        const double d2 = (v - mean) * (v - mean);
        var += d2;
        m4 += d2 * d2;
    }
    var /= static_cast<double>(n - 1);
    m4 /= static_cast<double>(n);
    // stderr of the sample variance from the fourth central moment.
    const double var_se = std::sqrt((m4 - var * var) / static_cast<double>(n));
    cr.checks.push_back(abs_check("Var(A)/t^2 vs 1/12", var, 1.0 / 12.0, 3.0 * var_se));
    return cr;
}

Criterion check_mc_vs_quadrature(const McScale& scale) {
    Criterion cr{"A7", "<S(m)-S0(m)>/t: Monte Carlo vs quadrature, asymptotic ordering", {}};
    for (int m : scale.cross_m) {
        ExperimentConfig cfg;
        cfg.m = m;
        cfg.n_steps = scale.steps;
        cfg.n_samples = scale.samples_cross;
        cfg.master_seed = scale.seed + 100 + static_cast<std::uint64_t>(m);
        cfg.n_max = 1;
        cfg.n_threads = scale.threads;
        const ExperimentResult res = run_experiment(cfg);
        const MCEstimate mc = res.observables.at("S_minus_S0_over_t");
        const double quad_val = mean_total_minus_zero(m, 1.0);
        const double t = cfg.t_eff();
        char name[96];
        std::snprintf(name, sizeof(name), "MC vs quadrature, m=%d", m);
        cr.checks.push_back(mc_check(name, mc, quad_val, lattice_band(0.7, t)));
        if (m >= 16) {
            const double lead = asymptotic_leading(m, 1.0);
            // The same lattice depletion applies to the lower bound of the
            // ordering: the finite-N value may dip below the continuum
            // subleading curve by up to the allowance.
            const double sub =
                asymptotic_subleading(m, 1.0) * (1.0 - lattice_band(0.7, t) + 0.05);
            std::snprintf(name, sizeof(name), "ordering subleading < MC < leading, m=%d", m);
            cr.checks.push_back(
                {name, sub < mc.mean && mc.mean < lead, mc.mean, sub, lead - sub});
        }
    }
    return cr;
}

Criterion check_property_suites(std::uint64_t seed) {
    Criterion cr{"A8", "sampler exactness and per-sample exact invariants", {}};

    // Exact-uniformity of the sampler vs brute-force enumeration.
    for (std::int64_t n_steps : {2, 4, 6}) {
        std::unordered_map<std::uint64_t, std::size_t> category;
        std::uint64_t total = 1;
        for (std::int64_t i = 0; i < n_steps; ++i) total *= 4;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t c = code;
            std::int64_t x = 0, y = 0;
            for (std::int64_t i = 0; i < n_steps; ++i, c /= 4) {
                switch (c % 4) {
                    case 0: ++x; break;
                    case 1: --x; break;
                    case 2: ++y; break;
                    default: --y; break;
                }
            }
            if (x == 0 && y == 0) category.emplace(code, category.size());
        }
        const std::size_t k = category.size();
        std::vector<double> counts(k, 0.0);
        const std::size_t draws = 1000000;
        const ClosedWalkSampler sampler(n_steps);
        Rng rng(substream_seed(seed, static_cast<std::uint64_t>(n_steps)));
        for (std::size_t i = 0; i < draws; ++i) {
            const ClosedWalk w = sampler.sample(rng);
            std::uint64_t code = 0, base = 1;
            for (Step s : w.steps) {
                code += static_cast<std::uint64_t>(s) * base;
                base *= 4;
            }
            ++counts[category.at(code)];
        }
        const double expected = static_cast<double>(draws) / static_cast<double>(k);
        double chi2 = 0.0;
        for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
        const double p = gamma_q(0.5 * static_cast<double>(k - 1), 0.5 * chi2);
        char name[96];
        std::snprintf(name, sizeof(name), "sampler chi^2 p-value, N=%lld (%zu walks)",
                      static_cast<long long>(n_steps), k);
        cr.checks.push_back({name, p > 0.001, p, 1.0, 0.001});
    }

    // Exact invariants on seeded samples.
    std::size_t violations = 0;
    const std::size_t n_samples = 1000;
    const ClosedWalkSampler sampler(1000);
    for (std::size_t i = 0; i < n_samples; ++i) {
        Rng rng(substream_seed(seed + 7, i));
        std::vector<ClosedWalk> walks{sampler.sample(rng), sampler.sample(rng)};
        std::int64_t shoelace = 0;
        for (const ClosedWalk& w : walks) {
            if (!w.is_closed()) ++violations;
            shoelace += algebraic_area(w);
        }
        try {
            const WindingField field = winding_field(walks);
            const SectorTally tally = sector_tally(field);  // exterior purity inside
            std::int64_t field_sum = 0;
            for (std::int32_t w : field.winding) field_sum += w;
            if (field_sum != shoelace) ++violations;
            std::int64_t n_sum = 0, a_sum = 0;
            for (const auto& [n, cnt] : tally.sector_areas) {
                n_sum += cnt;
                a_sum += static_cast<std::int64_t>(n) * cnt;
            }
            if (tally.total_cells != tally.s0_inside + n_sum) ++violations;
            if (tally.algebraic != a_sum || tally.algebraic != shoelace) ++violations;
            if (convex_hull_area(walks) < static_cast<double>(tally.total_cells)) ++violations;
        } catch (const std::exception&) {
            ++violations;
        }
    }
    cr.checks.push_back({"exact invariants on 1000 seeded 2-walk samples (violations)",
                         violations == 0, static_cast<double>(violations), 0.0, 0.0});
    return cr;
}

std::vector<Criterion> quick_suite() {
    return {check_z_alpha_closed_form(), check_sector_means_one_path(),
            check_area_density_consistency(), check_g_alpha_consistency()};
}

std::vector<Criterion> full_suite(const McScale& scale) {
    std::vector<Criterion> out = quick_suite();
    out.push_back(check_mc_one_path_means(scale));
    out.push_back(check_mc_levy_distribution(scale));
    out.push_back(check_mc_vs_quadrature(scale));
    out.push_back(check_property_suites(scale.seed));
    return out;
}

}  // namespace validate
}  // namespace watlas
