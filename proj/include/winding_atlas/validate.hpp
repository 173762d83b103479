#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace watlas {
namespace validate {

struct CheckResult {
    std::string name;
    bool passed = false;
    double observed = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
};

struct Criterion {
    std::string id;
    std::string summary;
    std::vector<CheckResult> checks;
    bool passed() const;
};

/// Monte Carlo scale knobs for the simulation criteria.
struct McScale {
    std::int64_t steps = 100000;
    std::size_t samples_means = 2000;      // one-path observable means
    std::size_t samples_distribution = 10000;  // Levy-law KS check
    std::size_t samples_cross = 500;       // per-m cross-validation runs
    std::vector<int> cross_m = {4, 16, 64};
    std::uint64_t seed = 20260824;
    unsigned threads = 0;  // 0 = hardware concurrency
};

// Analytic criteria (seconds).
Criterion check_z_alpha_closed_form();       // Z_alpha(1) = pi t alpha(1-alpha)
Criterion check_sector_means_one_path();     // <S-S0> = pi t/6, <S_n> = t/(2 pi n^2)
Criterion check_area_density_consistency();  // series vs Fourier vs closed forms
Criterion check_g_alpha_consistency();       // series vs U-integral, tail, small-x

// Simulation criteria (minutes at default scale).
Criterion check_mc_one_path_means(const McScale& scale);
Criterion check_mc_levy_distribution(const McScale& scale);
Criterion check_mc_vs_quadrature(const McScale& scale);
Criterion check_property_suites(std::uint64_t seed);

std::vector<Criterion> quick_suite();
std::vector<Criterion> full_suite(const McScale& scale);

}  // namespace validate
}  // namespace watlas
