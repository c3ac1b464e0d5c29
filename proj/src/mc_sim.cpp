#include "vbl/mc_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "vbl/errors.hpp"

namespace vbl::mc {

namespace {

double dist2(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Runs body(i) for i in [0, count) on `threads` workers with contiguous
// blocks. Each index is handled exactly once, so results written per index
// do not depend on the worker count.
template <class Body>
void parallel_for(long count, int threads, Body&& body) {
    const long workers = std::max<long>(1, std::min<long>(threads, count));
    if (workers == 1) {
        for (long i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    for (long w = 0; w < workers; ++w) {
        const long begin = count * w / workers;
        const long end = count * (w + 1) / workers;
        pool.emplace_back([&, w, begin, end] {
            try {
                for (long i = begin; i < end; ++i) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

void require_inside(const Point& p, double side) {
    if (!(p.x >= 0.0 && p.x <= side && p.y >= 0.0 && p.y <= side))
        throw DomainError("mc_sim: seed0 must lie inside the square [0, L]^2");
}

}  // namespace

// ---- polygon -----------------------------------------------------------------

ConvexPolygon ConvexPolygon::square(double side) {
    return ConvexPolygon({{0.0, 0.0}, {side, 0.0}, {side, side}, {0.0, side}});
}

double ConvexPolygon::area() const {
    if (empty()) return 0.0;
    double twice = 0.0;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = vertices_[i];
        const Point& b = vertices_[(i + 1) % n];
        twice += a.x * b.y - b.x * a.y;
    }
    return 0.5 * std::abs(twice);
}

void ConvexPolygon::clip(double nx, double ny, double c) {
    if (vertices_.empty()) return;
    std::vector<Point> out;
    out.reserve(vertices_.size() + 1);
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& cur = vertices_[i];
        const Point& nxt = vertices_[(i + 1) % n];
        const double sc = nx * cur.x + ny * cur.y - c;
        const double sn = nx * nxt.x + ny * nxt.y - c;
        if (sc <= 0.0) out.push_back(cur);
        if ((sc < 0.0 && sn > 0.0) || (sc > 0.0 && sn < 0.0)) {
            const double t = sc / (sc - sn);
            out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
        }
    }
    vertices_ = std::move(out);
}

double ConvexPolygon::max_dist2(const Point& p) const {
    double best = 0.0;
    for (const auto& v : vertices_) best = std::max(best, dist2(v, p));
    return best;
}

Box ConvexPolygon::bounding_box() const {
    Box b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
          -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& v : vertices_) {
        b.x0 = std::min(b.x0, v.x);
        b.y0 = std::min(b.y0, v.y);
        b.x1 = std::max(b.x1, v.x);
        b.y1 = std::max(b.y1, v.y);
    }
    return b;
}

bool ConvexPolygon::contains(const Point& p) const {
    if (empty()) return false;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = vertices_[i];
        const Point& b = vertices_[(i + 1) % n];
        if ((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) < 0.0) return false;
    }
    return true;
}

// ---- sampling ----------------------------------------------------------------

std::vector<Point> sample_ppp(double intensity, const Box& box, rng::Xoshiro256& gen) {
    if (!(intensity >= 0.0)) throw DomainError("sample_ppp: intensity must be >= 0");
    const double mean = intensity * std::max(box.area(), 0.0);
    if (mean == 0.0) return {};
    std::poisson_distribution<long> count_dist(mean);
    const long count = count_dist(gen);
    std::vector<Point> pts(static_cast<std::size_t>(count));
    const double w = box.x1 - box.x0;
    const double h = box.y1 - box.y0;
    for (auto& p : pts) {
        p.x = box.x0 + w * gen.uniform();
        p.y = box.y0 + h * gen.uniform();
    }
    return pts;
}

std::vector<Point> sample_ppp(double intensity, double side, rng::Xoshiro256& gen) {
    return sample_ppp(intensity, Box{0.0, 0.0, side, side}, gen);
}

// ---- cells -------------------------------------------------------------------

ConvexPolygon voronoi_cell(const Point& seed0, std::vector<Point>& others, double side) {
    if (!(side > 0.0)) throw DomainError("voronoi_cell: side must be > 0");
    require_inside(seed0, side);
    std::vector<std::pair<double, std::size_t>> order(others.size());
    for (std::size_t i = 0; i < others.size(); ++i) {
        order[i] = {dist2(others[i], seed0), i};
        if (order[i].first == 0.0) throw DegenerateError("voronoi_cell: a seed coincides with seed0");
    }
    std::sort(order.begin(), order.end());
    std::vector<Point> sorted(others.size());
    for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = others[order[i].second];
    others = std::move(sorted);

    ConvexPolygon cell = ConvexPolygon::square(side);
    double reach2 = cell.max_dist2(seed0);
    for (std::size_t i = 0; i < others.size(); ++i) {
        // A bisector at distance D/2 cannot cut a polygon whose vertices all
        // lie within D/2 of seed0; later seeds are farther still.
        if (order[i].first >= 4.0 * reach2) break;
        const Point& s = others[i];
        const double nx = s.x - seed0.x;
        const double ny = s.y - seed0.y;
        const double c = 0.5 * (nx * (s.x + seed0.x) + ny * (s.y + seed0.y));
        cell.clip(nx, ny, c);
        reach2 = cell.max_dist2(seed0);
    }
    return cell;
}

double voronoi_cell_area(const Point& seed0, std::vector<Point> others, double side) {
    return voronoi_cell(seed0, others, side).area();
}

std::vector<double> all_cell_areas(const std::vector<Point>& seeds, double side) {
    std::vector<double> areas;
    areas.reserve(seeds.size());
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        std::vector<Point> others;
        others.reserve(seeds.size() - 1);
        for (std::size_t j = 0; j < seeds.size(); ++j)
            if (j != i) others.push_back(seeds[j]);
        areas.push_back(voronoi_cell_area(seeds[i], std::move(others), side));
    }
    return areas;
}

// ---- simulations -------------------------------------------------------------

void SimConfig::validate() const {
    if (!(side_L > 0.0)) throw DomainError("SimConfig: side_L must be > 0");
    if (!(intensity >= 0.0)) throw DomainError("SimConfig: intensity must be >= 0");
    if (trials < 1) throw DomainError("SimConfig: trials must be >= 1");
    require_inside(seed0, side_L);
}

SimStats summarize(const std::vector<double>& samples) {
    SimStats s;
    s.trials = static_cast<long>(samples.size());
    if (samples.empty()) return s;
    const double n = static_cast<double>(samples.size());
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double a : samples) {
        sum += a;
        sum_sq += a * a;
    }
    s.mean = sum / n;
    s.second_moment = sum_sq / n;
    double m2 = 0.0;
    double m4 = 0.0;
    double sq_dev = 0.0;
    for (double a : samples) {
        const double d = a - s.mean;
        m2 += d * d;
        m4 += d * d * d * d;
        const double e = a * a - s.second_moment;
        sq_dev += e * e;
    }
    m2 /= n;
    m4 /= n;
    s.variance = samples.size() > 1 ? m2 * n / (n - 1.0) : 0.0;
    s.std_err_mean = std::sqrt(s.variance / n);
    s.std_err_second_moment = samples.size() > 1 ? std::sqrt(sq_dev / (n - 1.0) / n) : 0.0;
    s.std_err_variance = std::sqrt(std::max(m4 - m2 * m2, 0.0) / n);
    return s;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("VBL_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> simulate_cell_areas(const SimConfig& cfg, int threads, std::uint64_t stream) {
    cfg.validate();
    std::vector<double> areas(static_cast<std::size_t>(cfg.trials));
    parallel_for(cfg.trials, resolve_threads(threads), [&](long t) {
        auto gen = rng::substream(cfg.rng_seed, stream, static_cast<std::uint64_t>(t));
        auto pts = sample_ppp(cfg.intensity, cfg.side_L, gen);
        // A draw landing exactly on seed0 has probability zero; drop it.
        std::erase_if(pts, [&](const Point& p) { return p.x == cfg.seed0.x && p.y == cfg.seed0.y; });
        areas[static_cast<std::size_t>(t)] = voronoi_cell(cfg.seed0, pts, cfg.side_L).area();
    });
    return areas;
}

SimStats simulate_cell_area(const SimConfig& cfg, int threads) {
    return summarize(simulate_cell_areas(cfg, threads));
}

std::vector<GridEntry> grid_scan(double delta, int n_per_axis, long trials_per_seed, const SimConfig& base,
                                 int threads) {
    if (!(delta > 0.0)) throw DomainError("grid_scan: delta must be > 0");
    if (n_per_axis < 1) throw DomainError("grid_scan: n_per_axis must be >= 1");
    std::vector<GridEntry> out;
    out.reserve(static_cast<std::size_t>(n_per_axis) * n_per_axis);
    for (int i = 0; i < n_per_axis; ++i) {
        for (int j = 0; j < n_per_axis; ++j) {
            SimConfig cfg = base;
            cfg.trials = trials_per_seed;
            cfg.seed0 = {i * delta, j * delta};
            const auto stream = static_cast<std::uint64_t>(i) * n_per_axis + j;
            out.push_back({i, j, cfg.seed0, summarize(simulate_cell_areas(cfg, threads, stream))});
        }
    }
    return out;
}

std::vector<double> DegreeHistograms::in_pmf() const {
    std::vector<double> pmf(in_counts.size());
    for (std::size_t i = 0; i < pmf.size(); ++i) pmf[i] = static_cast<double>(in_counts[i]) / trials;
    return pmf;
}

std::vector<double> DegreeHistograms::out_pmf() const {
    std::vector<double> pmf(out_counts.size());
    for (std::size_t i = 0; i < pmf.size(); ++i) pmf[i] = static_cast<double>(out_counts[i]) / trials;
    return pmf;
}

DegreeHistograms simulate_secure_degrees(double lambda_l, double lambda_e, const Point& seed0, double side,
                                         long trials, std::uint64_t rng_seed, int threads) {
    if (!(lambda_l > 0.0 && lambda_e > 0.0)) throw DomainError("simulate_secure_degrees: intensities must be > 0");
    if (!(side > 0.0)) throw DomainError("simulate_secure_degrees: side must be > 0");
    if (trials < 1) throw DomainError("simulate_secure_degrees: trials must be >= 1");
    require_inside(seed0, side);

    std::vector<long> in_deg(static_cast<std::size_t>(trials));
    std::vector<long> out_deg(static_cast<std::size_t>(trials));
    parallel_for(trials, resolve_threads(threads), [&](long t) {
        auto gen = rng::substream(rng_seed, 0, static_cast<std::uint64_t>(t));
        auto eaves = sample_ppp(lambda_e, side, gen);
        std::erase_if(eaves, [&](const Point& p) { return p.x == seed0.x && p.y == seed0.y; });
        const ConvexPolygon cell = voronoi_cell(seed0, eaves, side);
        // voronoi_cell sorts by distance, so the nearest eavesdropper is first.
        const double reach2 = eaves.empty() ? std::numeric_limits<double>::infinity() : dist2(eaves.front(), seed0);
        const double reach = std::sqrt(reach2);

        // Legitimate users only matter inside the cell or the disk of radius
        // `reach`; restricting the process to a box covering both is exact.
        Box box = cell.bounding_box();
        box.x0 = std::max(0.0, std::min(box.x0, seed0.x - reach));
        box.y0 = std::max(0.0, std::min(box.y0, seed0.y - reach));
        box.x1 = std::min(side, std::max(box.x1, seed0.x + reach));
        box.y1 = std::min(side, std::max(box.y1, seed0.y + reach));
        const auto legit = sample_ppp(lambda_l, box, gen);

        long n_in = 0;
        long n_out = 0;
        for (const auto& u : legit) {
            if (cell.contains(u)) ++n_in;
            if (dist2(u, seed0) < reach2) ++n_out;
        }
        in_deg[static_cast<std::size_t>(t)] = n_in;
        out_deg[static_cast<std::size_t>(t)] = n_out;
    });

    DegreeHistograms hist;
    hist.trials = trials;
    const long max_in = *std::max_element(in_deg.begin(), in_deg.end());
    const long max_out = *std::max_element(out_deg.begin(), out_deg.end());
    hist.in_counts.assign(static_cast<std::size_t>(max_in + 1), 0);
    hist.out_counts.assign(static_cast<std::size_t>(max_out + 1), 0);
    for (long v : in_deg) ++hist.in_counts[static_cast<std::size_t>(v)];
    for (long v : out_deg) ++hist.out_counts[static_cast<std::size_t>(v)];
    return hist;
}

}  // namespace vbl::mc
