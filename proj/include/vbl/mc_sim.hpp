#pragma once

// Monte Carlo oracle: Voronoi cells of a conditioned seed S0 inside the
// square [0, L]^2, computed exactly by clipping the square with
// perpendicular-bisector half-planes.

#include <cstdint>
#include <vector>

#include "vbl/rng.hpp"

namespace vbl::mc {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct Box {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 0.0;
    double y1 = 0.0;

    double area() const { return (x1 - x0) * (y1 - y0); }
};

/// Counter-clockwise convex polygon.
class ConvexPolygon {
public:
    ConvexPolygon() = default;
    explicit ConvexPolygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {}

    static ConvexPolygon square(double side);

    const std::vector<Point>& vertices() const { return vertices_; }
    bool empty() const { return vertices_.size() < 3; }

    /// Shoelace area.
    double area() const;

    /// Keeps the part with nx * x + ny * y <= c.
    void clip(double nx, double ny, double c);

    /// Largest squared distance from `p` to a vertex.
    double max_dist2(const Point& p) const;

    Box bounding_box() const;

    /// True for points strictly inside or on the boundary.
    bool contains(const Point& p) const;

private:
    std::vector<Point> vertices_;
};

/// Homogeneous Poisson process on the box.
std::vector<Point> sample_ppp(double intensity, const Box& box, rng::Xoshiro256& gen);
std::vector<Point> sample_ppp(double intensity, double side, rng::Xoshiro256& gen);

/// Cell of seed0 in the Voronoi tessellation of {seed0} + others restricted
/// to [0, side]^2. `others` is reordered by distance to seed0.
ConvexPolygon voronoi_cell(const Point& seed0, std::vector<Point>& others, double side);

double voronoi_cell_area(const Point& seed0, std::vector<Point> others, double side);

/// Area of every cell of the configuration (naive, one clip per pair).
std::vector<double> all_cell_areas(const std::vector<Point>& seeds, double side);

struct SimConfig {
    double side_L = 10.0;
    double intensity = 1.0;
    Point seed0{};
    long trials = 10'000;
    std::uint64_t rng_seed = 1;

    void validate() const;
};

struct SimStats {
    double mean = 0.0;
    double variance = 0.0;
    double std_err_mean = 0.0;
    long trials = 0;
    double second_moment = 0.0;
    double std_err_second_moment = 0.0;
    double std_err_variance = 0.0;
};

SimStats summarize(const std::vector<double>& samples);

/// Worker count: `requested` if positive, else VBL_THREADS if set and
/// positive, else the hardware concurrency.
int resolve_threads(int requested = 0);

/// Cell area of seed0 for each trial, in trial order. `stream` selects an
/// independent family of substreams for the same rng_seed.
std::vector<double> simulate_cell_areas(const SimConfig& cfg, int threads = 0, std::uint64_t stream = 0);

SimStats simulate_cell_area(const SimConfig& cfg, int threads = 0);

struct GridEntry {
    int i = 0;
    int j = 0;
    Point position{};
    SimStats stats{};
};

/// Seeds at (i delta, j delta) for i, j in [0, n). Position (i, j) uses
/// stream i * n + j, so (0, 0) reproduces simulate_cell_area at the corner.
std::vector<GridEntry> grid_scan(double delta, int n_per_axis, long trials_per_seed, const SimConfig& base,
                                 int threads = 0);

struct DegreeHistograms {
    std::vector<long> in_counts;
    std::vector<long> out_counts;
    long trials = 0;

    std::vector<double> in_pmf() const;
    std::vector<double> out_pmf() const;
};

/// Per trial: eavesdroppers on the square; the in-degree counts legitimate
/// users inside the cell of seed0 against the eavesdroppers, the out-degree
/// counts legitimate users strictly closer to seed0 than its nearest
/// eavesdropper.
DegreeHistograms simulate_secure_degrees(double lambda_l, double lambda_e, const Point& seed0, double side,
                                         long trials, std::uint64_t rng_seed, int threads = 0);

}  // namespace vbl::mc
