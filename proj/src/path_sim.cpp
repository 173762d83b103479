#include "winding_atlas/path_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace watlas {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct Vec2 {
    std::int64_t x, y;
};

std::int64_t cross(const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

char step_to_char(Step s) {
    switch (s) {
        case Step::Right: return 'R';
        case Step::Left: return 'L';
        case Step::Up: return 'U';
        case Step::Down: return 'D';
    }
    throw std::logic_error("step_to_char: bad step");
}

Step step_from_char(char c) {
    switch (c) {
        case 'R': return Step::Right;
        case 'L': return Step::Left;
        case 'U': return Step::Up;
        case 'D': return Step::Down;
    }
    throw std::invalid_argument(std::string("step_from_char: bad symbol '") + c + "'");
}

bool ClosedWalk::is_closed() const {
    std::int64_t x = 0, y = 0;
    for (Step s : steps) {
        switch (s) {
            case Step::Right: ++x; break;
            case Step::Left: --x; break;
            case Step::Up: ++y; break;
            case Step::Down: --y; break;
        }
    }
    return x == 0 && y == 0;
}

std::vector<std::pair<std::int32_t, std::int32_t>> ClosedWalk::vertices() const {
    std::vector<std::pair<std::int32_t, std::int32_t>> v;
    v.reserve(steps.size() + 1);
    std::int32_t x = 0, y = 0;
    v.emplace_back(x, y);
    for (Step s : steps) {
        switch (s) {
            case Step::Right: ++x; break;
            case Step::Left: --x; break;
            case Step::Up: ++y; break;
            case Step::Down: --y; break;
        }
        v.emplace_back(x, y);
    }
    return v;
}

std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t index) {
    return splitmix64(splitmix64(master_seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

ClosedWalkSampler::ClosedWalkSampler(std::int64_t n_steps) : n_(n_steps) {
    if (n_steps <= 0 || n_steps % 2 != 0)
        throw std::domain_error("ClosedWalkSampler: n_steps must be even and positive");
    const std::int64_t half = n_steps / 2;
    // log of N! / (a! a! b! b!), b = half - a; normalized inverse CDF over a.
    std::vector<double> logw(static_cast<std::size_t>(half) + 1);
    double max_logw = -std::numeric_limits<double>::infinity();
    for (std::int64_t a = 0; a <= half; ++a) {
        const std::int64_t b = half - a;
        const double lw = -2.0 * std::lgamma(static_cast<double>(a) + 1.0) -
                          2.0 * std::lgamma(static_cast<double>(b) + 1.0);
        logw[static_cast<std::size_t>(a)] = lw;
        max_logw = std::max(max_logw, lw);
    }
    cdf_.resize(logw.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < logw.size(); ++i) {
        acc += std::exp(logw[i] - max_logw);
        cdf_[i] = acc;
    }
    for (double& c : cdf_) c /= acc;
    cdf_.back() = 1.0;
}

ClosedWalk ClosedWalkSampler::sample(Rng& rng) const {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double u = unif(rng);
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    const std::int64_t a = static_cast<std::int64_t>(it - cdf_.begin());
    const std::int64_t b = n_ / 2 - a;

    ClosedWalk walk;
    walk.steps.reserve(static_cast<std::size_t>(n_));
    walk.steps.insert(walk.steps.end(), static_cast<std::size_t>(a), Step::Right);
    walk.steps.insert(walk.steps.end(), static_cast<std::size_t>(a), Step::Left);
    walk.steps.insert(walk.steps.end(), static_cast<std::size_t>(b), Step::Up);
    walk.steps.insert(walk.steps.end(), static_cast<std::size_t>(b), Step::Down);
    std::shuffle(walk.steps.begin(), walk.steps.end(), rng);
    return walk;
}

ClosedWalk sample_closed_walk(std::int64_t n_steps, Rng& rng) {
    return ClosedWalkSampler(n_steps).sample(rng);
}

std::size_t WindingField::cell_index(std::int32_t cx, std::int32_t cy) const {
    return static_cast<std::size_t>(cy - min_y) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(cx - min_x);
}

std::int32_t WindingField::winding_at(std::int32_t cx, std::int32_t cy) const {
    if (cx < min_x || cx >= min_x + width || cy < min_y || cy >= min_y + height)
        return 0;
    return winding[cell_index(cx, cy)];
}

WindingField winding_field(const std::vector<ClosedWalk>& walks,
                           std::size_t memory_cap_bytes) {
    if (walks.empty())
        throw std::invalid_argument("winding_field: empty walk list");

    std::int32_t min_vx = 0, max_vx = 0, min_vy = 0, max_vy = 0;
    for (const ClosedWalk& w : walks) {
        std::int32_t x = 0, y = 0;
        for (Step s : w.steps) {
            switch (s) {
                case Step::Right: ++x; break;
                case Step::Left: --x; break;
                case Step::Up: ++y; break;
                case Step::Down: --y; break;
            }
            min_vx = std::min(min_vx, x);
            max_vx = std::max(max_vx, x);
            min_vy = std::min(min_vy, y);
            max_vy = std::max(max_vy, y);
        }
        if (x != 0 || y != 0)
            throw std::invalid_argument("winding_field: walk is not closed");
    }

    WindingField f;
    // Pad by one cell on every side so the boundary ring is winding-free.
    f.min_x = min_vx - 1;
    f.min_y = min_vy - 1;
    f.width = (max_vx - min_vx) + 2;
    f.height = (max_vy - min_vy) + 2;
    f.m = static_cast<int>(walks.size());

    const std::size_t cells =
        static_cast<std::size_t>(f.width) * static_cast<std::size_t>(f.height);
    const std::size_t vgrid = static_cast<std::size_t>(f.width + 1) *
                              static_cast<std::size_t>(f.height + 1);
    const std::size_t bytes = cells * sizeof(std::int32_t) + 2 * vgrid;
    if (bytes > memory_cap_bytes)
        throw ResourceError("winding_field: bounding box needs " + std::to_string(bytes) +
                            " bytes, cap is " + std::to_string(memory_cap_bytes));

    f.winding.assign(cells, 0);
    f.edge_horiz.assign(vgrid, 0);
    f.edge_vert.assign(vgrid, 0);

    const std::int32_t vw = f.width + 1;
    const auto vidx = [&f, vw](std::int32_t x, std::int32_t y) {
        return static_cast<std::size_t>(y - f.min_y) * static_cast<std::size_t>(vw) +
               static_cast<std::size_t>(x - f.min_x);
    };

    // Vertical-step crossing events bucketed per cell row: an up step at
    // column x adds +1 to every cell of that row with cx <= x-1 (the ray from
    // the cell center to +infinity crosses it), a down step adds -1.
    struct Event {
        std::int32_t col;
        std::int32_t sign;
    };
    std::vector<std::vector<Event>> rows(static_cast<std::size_t>(f.height));
    for (const ClosedWalk& w : walks) {
        std::int32_t x = 0, y = 0;
        for (Step s : w.steps) {
            switch (s) {
                case Step::Right:
                    f.edge_horiz[vidx(x, y)] = 1;
                    ++x;
                    break;
                case Step::Left:
                    --x;
                    f.edge_horiz[vidx(x, y)] = 1;
                    break;
                case Step::Up:
                    f.edge_vert[vidx(x, y)] = 1;
                    rows[static_cast<std::size_t>(y - f.min_y)].push_back({x - 1, +1});
                    ++y;
                    break;
                case Step::Down:
                    --y;
                    f.edge_vert[vidx(x, y)] = 1;
                    rows[static_cast<std::size_t>(y - f.min_y)].push_back({x - 1, -1});
                    break;
            }
        }
    }

    std::vector<std::int32_t> delta(static_cast<std::size_t>(f.width));
    for (std::int32_t ry = 0; ry < f.height; ++ry) {
        auto& events = rows[static_cast<std::size_t>(ry)];
        if (events.empty()) continue;
        std::fill(delta.begin(), delta.end(), 0);
        for (const Event& e : events)
            delta[static_cast<std::size_t>(e.col - f.min_x)] += e.sign;
        std::int32_t running = 0;
        std::int32_t* row = f.winding.data() +
                            static_cast<std::size_t>(ry) * static_cast<std::size_t>(f.width);
        for (std::int32_t cx = f.width - 1; cx >= 0; --cx) {
            running += delta[static_cast<std::size_t>(cx)];
            row[cx] = running;
        }
    }
    return f;
}

SectorTally sector_tally(const WindingField& f) {
    const std::size_t cells =
        static_cast<std::size_t>(f.width) * static_cast<std::size_t>(f.height);
    if (cells == 0 || f.winding.size() != cells)
        throw std::invalid_argument("sector_tally: invalid field");

    const std::int32_t vw = f.width + 1;
    const auto vbit = [&f, vw](std::int32_t x, std::int32_t y, bool horiz) {
        const std::size_t i =
            static_cast<std::size_t>(y - f.min_y) * static_cast<std::size_t>(vw) +
            static_cast<std::size_t>(x - f.min_x);
        return horiz ? f.edge_horiz[i] : f.edge_vert[i];
    };

    std::vector<std::uint8_t> exterior(cells, 0);
    std::vector<std::uint32_t> queue;
    queue.reserve(cells / 4);
    const auto push = [&](std::int32_t cx, std::int32_t cy) {
        const std::size_t i = f.cell_index(cx, cy);
        if (!exterior[i]) {
            exterior[i] = 1;
            queue.push_back(static_cast<std::uint32_t>(i));
        }
    };
    for (std::int32_t cx = 0; cx < f.width; ++cx) {
        push(f.min_x + cx, f.min_y);
        push(f.min_x + cx, f.min_y + f.height - 1);
    }
    for (std::int32_t cy = 0; cy < f.height; ++cy) {
        push(f.min_x, f.min_y + cy);
        push(f.min_x + f.width - 1, f.min_y + cy);
    }

    // 4-neighbor flood fill; two cells communicate iff the shared lattice
    // edge is untraversed.
    while (!queue.empty()) {
        const std::uint32_t i = queue.back();
        queue.pop_back();
        const std::int32_t cx = f.min_x + static_cast<std::int32_t>(i % static_cast<std::uint32_t>(f.width));
        const std::int32_t cy = f.min_y + static_cast<std::int32_t>(i / static_cast<std::uint32_t>(f.width));
        if (cx + 1 < f.min_x + f.width && !vbit(cx + 1, cy, false)) push(cx + 1, cy);
        if (cx > f.min_x && !vbit(cx, cy, false)) push(cx - 1, cy);
        if (cy + 1 < f.min_y + f.height && !vbit(cx, cy + 1, true)) push(cx, cy + 1);
        if (cy > f.min_y && !vbit(cx, cy, true)) push(cx, cy - 1);
    }

    SectorTally tally;
    std::int64_t n_exterior = 0;
    for (std::size_t i = 0; i < cells; ++i) {
        const std::int32_t w = f.winding[i];
        if (exterior[i]) {
            if (w != 0)
                throw std::logic_error("sector_tally: exterior cell has nonzero winding");
            ++n_exterior;
            continue;
        }
        if (w == 0)
            ++tally.s0_inside;
        else
            ++tally.sector_areas[w];
        tally.algebraic += w;
    }
    tally.total_cells = static_cast<std::int64_t>(cells) - n_exterior;
    return tally;
}

std::int64_t algebraic_area(const ClosedWalk& walk) {
    std::int64_t area = 0;
    std::int64_t x = 0;
    for (Step s : walk.steps) {
        switch (s) {
            case Step::Right: ++x; break;
            case Step::Left: --x; break;
            case Step::Up: area += x; break;
            case Step::Down: area -= x; break;
        }
    }
    return area;
}

double convex_hull_area(const std::vector<ClosedWalk>& walks) {
    if (walks.empty())
        throw std::invalid_argument("convex_hull_area: empty walk list");
    std::vector<Vec2> pts;
    for (const ClosedWalk& w : walks) {
        std::int64_t x = 0, y = 0;
        pts.push_back({0, 0});
        for (Step s : w.steps) {
            switch (s) {
                case Step::Right: ++x; break;
                case Step::Left: --x; break;
                case Step::Up: ++y; break;
                case Step::Down: --y; break;
            }
            pts.push_back({x, y});
        }
    }
    std::sort(pts.begin(), pts.end(),
              [](const Vec2& a, const Vec2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return 0.0;

    // Monotone chain.
    std::vector<Vec2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) return 0.0;

    std::int64_t twice_area = 0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Vec2& p = hull[i];
        const Vec2& q = hull[(i + 1) % hull.size()];
        twice_area += p.x * q.y - q.x * p.y;
    }
    return 0.5 * static_cast<double>(std::llabs(twice_area));
}

namespace {

struct SampleOut {
    bool ok = false;
    double s = 0, s_minus_s0 = 0, s0 = 0, hull = 0, a = 0, a2 = 0;
    std::vector<double> sectors;  // index 0..2*n_max, n = index - n_max
};

MCEstimate estimate(const std::vector<double>& xs) {
    MCEstimate e;
    e.n_samples = xs.size();
    if (xs.empty()) return e;
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    e.mean = mean;
    if (xs.size() > 1) {
        const double var = ss / static_cast<double>(xs.size() - 1);
        e.stderr_ = std::sqrt(var / static_cast<double>(xs.size()));
    }
    return e;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    if (config.m < 1) throw std::domain_error("run_experiment: requires m >= 1");
    if (config.n_samples < 1) throw std::domain_error("run_experiment: requires n_samples >= 1");
    if (config.n_steps <= 0 || config.n_steps % 2 != 0)
        throw std::domain_error("run_experiment: n_steps must be even and positive");

    const ClosedWalkSampler sampler(config.n_steps);
    const double t = config.t_eff();
    const int n_max = config.n_max;

    std::vector<SampleOut> outs(config.n_samples);
    std::atomic<std::size_t> next{0};

    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= config.n_samples) return;
            SampleOut& out = outs[i];
            try {
                Rng rng(substream_seed(config.master_seed, i));
                std::vector<ClosedWalk> walks;
                walks.reserve(static_cast<std::size_t>(config.m));
                std::int64_t a_total = 0;
                for (int j = 0; j < config.m; ++j) {
                    walks.push_back(sampler.sample(rng));
                    a_total += algebraic_area(walks.back());
                }
                const WindingField field = winding_field(walks, config.memory_cap_bytes);
                const SectorTally tally = sector_tally(field);
                if (tally.algebraic != a_total)
                    throw std::logic_error("run_experiment: field/shoelace mismatch");

                out.s = static_cast<double>(tally.total_cells) / t;
                out.s0 = static_cast<double>(tally.s0_inside) / t;
                out.s_minus_s0 = static_cast<double>(tally.total_cells - tally.s0_inside) / t;
                out.hull = convex_hull_area(walks) / t;
                out.a = static_cast<double>(a_total) / t;
                out.a2 = out.a * out.a;
                out.sectors.assign(static_cast<std::size_t>(2 * n_max + 1), 0.0);
                for (const auto& [n, cnt] : tally.sector_areas) {
                    if (n >= -n_max && n <= n_max)
                        out.sectors[static_cast<std::size_t>(n + n_max)] =
                            static_cast<double>(cnt) / t;
                }
                out.ok = true;
            } catch (const std::exception&) {
                out.ok = false;  // recorded, batch continues
            }
        }
    };

    unsigned threads = config.n_threads == 0 ? std::thread::hardware_concurrency()
                                             : config.n_threads;
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(config.n_samples)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }

    // Ordered reduction over sample index.
    ExperimentResult result;
    std::vector<double> s, sms0, s0, hull, a, a2;
    std::vector<std::vector<double>> sec(static_cast<std::size_t>(2 * n_max + 1));
    for (const SampleOut& o : outs) {
        if (!o.ok) {
            ++result.failed_samples;
            continue;
        }
        s.push_back(o.s);
        sms0.push_back(o.s_minus_s0);
        s0.push_back(o.s0);
        hull.push_back(o.hull);
        a.push_back(o.a);
        a2.push_back(o.a2);
        for (std::size_t j = 0; j < sec.size(); ++j) sec[j].push_back(o.sectors[j]);
    }

    result.observables["S_over_t"] = estimate(s);
    result.observables["S_minus_S0_over_t"] = estimate(sms0);
    result.observables["S0_over_t"] = estimate(s0);
    result.observables["hull_over_t"] = estimate(hull);
    result.observables["A_over_t"] = estimate(a);
    result.observables["A2_over_t2"] = estimate(a2);
    MCEstimate avar = estimate(a2);
    const MCEstimate amean = estimate(a);
    avar.mean -= amean.mean * amean.mean;  // sample variance of A/t
    result.observables["A_var_over_t2"] = avar;
    for (int n = -n_max; n <= n_max; ++n) {
        if (n == 0) continue;
        result.sector_area_over_t[n] = estimate(sec[static_cast<std::size_t>(n + n_max)]);
    }
    return result;
}

std::string walk_to_string(const ClosedWalk& walk) {
    std::string s;
    s.reserve(walk.steps.size());
    for (Step st : walk.steps) s.push_back(step_to_char(st));
    return s;
}

ClosedWalk walk_from_string(const std::string& line) {
    ClosedWalk w;
    w.steps.reserve(line.size());
    for (char c : line) w.steps.push_back(step_from_char(c));
    return w;
}

void write_walks(std::ostream& os, const std::vector<ClosedWalk>& walks) {
    for (const ClosedWalk& w : walks) os << walk_to_string(w) << '\n';
}

std::vector<ClosedWalk> read_walks(std::istream& is) {
    std::vector<ClosedWalk> walks;
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        walks.push_back(walk_from_string(line));
    }
    return walks;
}

}  // namespace watlas
