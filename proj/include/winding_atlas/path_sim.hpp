#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "winding_atlas/errors.hpp"

namespace watlas {

enum class Step : std::uint8_t { Right = 0, Left = 1, Up = 2, Down = 3 };

char step_to_char(Step s);
Step step_from_char(char c);

/// A closed nearest-neighbor walk on the square lattice, starting and ending
/// at the origin.
struct ClosedWalk {
    std::vector<Step> steps;

    std::size_t n_steps() const { return steps.size(); }
    bool is_closed() const;
    /// Vertex sequence including both endpoints (origin first and last).
    std::vector<std::pair<std::int32_t, std::int32_t>> vertices() const;
};

/// Per-cell integer winding numbers of m superposed walks over a padded
/// bounding box, plus bitmaps of the traversed lattice edges.  Cells are
/// identified by their lower-left lattice corner.
struct WindingField {
    std::int32_t min_x = 0, min_y = 0;  // lower-left cell of the (padded) bbox
    std::int32_t width = 0, height = 0;  // cell counts
    int m = 0;
    std::vector<std::int32_t> winding;     // width*height, row-major (y-major)
    std::vector<std::uint8_t> edge_horiz;  // edge (x,y)-(x+1,y), vertex grid
    std::vector<std::uint8_t> edge_vert;   // edge (x,y)-(x,y+1), vertex grid

    std::int32_t winding_at(std::int32_t cx, std::int32_t cy) const;
    std::size_t cell_index(std::int32_t cx, std::int32_t cy) const;
};

/// Areas by winding index (whole lattice cells).
struct SectorTally {
    std::map<int, std::int64_t> sector_areas;  // n != 0 -> cell count
    std::int64_t s0_inside = 0;
    std::int64_t total_cells = 0;   // S = s0_inside + sum_n sector_areas
    std::int64_t algebraic = 0;     // A = sum_n n * sector_areas[n]
    double hull_area = 0.0;         // filled by the caller (needs vertices)
};

/// Sample mean with standard error.
struct MCEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t n_samples = 0;
};

struct ExperimentConfig {
    int m = 1;
    std::int64_t n_steps = 1000;       // even, >= 2
    std::size_t n_samples = 100;
    std::uint64_t master_seed = 0;
    int n_max = 8;                     // sector index cap for per-n observables
    unsigned n_threads = 1;            // 0 = hardware concurrency
    std::size_t memory_cap_bytes = std::size_t(2) << 30;

    double t_eff() const { return static_cast<double>(n_steps) / 2.0; }
};

struct ExperimentResult {
    std::map<std::string, MCEstimate> observables;
    std::map<int, MCEstimate> sector_area_over_t;  // n -> <S_n(m)>/t
    std::size_t failed_samples = 0;
};

using Rng = std::mt19937_64;

/// Deterministic substream seed for one sample of one experiment.
std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t index);

/// Exact-uniform sampler over all closed walks of a fixed even length:
/// the balanced step-count pair (a,a,b,b) is drawn from the multinomial
/// weights in log space, then the step multiset is shuffled.
class ClosedWalkSampler {
public:
    explicit ClosedWalkSampler(std::int64_t n_steps);
    ClosedWalk sample(Rng& rng) const;
    std::int64_t n_steps() const { return n_; }

private:
    std::int64_t n_;
    std::vector<double> cdf_;  // cumulative P(a <= k), k = 0..N/2
};

/// One-shot convenience wrapper around ClosedWalkSampler.
ClosedWalk sample_closed_walk(std::int64_t n_steps, Rng& rng);

/// Winding-number field of superposed walks by row-wise ray casting:
/// vertical-step crossing events are suffix-summed per cell row.
WindingField winding_field(const std::vector<ClosedWalk>& walks,
                           std::size_t memory_cap_bytes = std::size_t(2) << 30);

/// Sector areas by winding index.  The exterior is the flood-filled
/// component of untraversed cells reachable from the padded boundary ring.
SectorTally sector_tally(const WindingField& field);

/// Shoelace algebraic area (sum of x * dy over steps), exact integer.
std::int64_t algebraic_area(const ClosedWalk& walk);

/// Area of the convex hull of all vertices of all walks (monotone chain).
double convex_hull_area(const std::vector<ClosedWalk>& walks);

/// Monte Carlo estimates of the sector/area observables.  Per-sample seeds
/// are derived from (master_seed, index); results are identical for any
/// thread count.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Line-based walk serialization: one step character from {R,L,U,D} per
/// symbol, one walk per newline-terminated line.
std::string walk_to_string(const ClosedWalk& walk);
ClosedWalk walk_from_string(const std::string& line);
void write_walks(std::ostream& os, const std::vector<ClosedWalk>& walks);
std::vector<ClosedWalk> read_walks(std::istream& is);

}  // namespace watlas
