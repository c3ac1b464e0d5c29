#include <cmath>
#include <random>

#include "doctest.h"
#include "vbl/errors.hpp"
#include "vbl/mc_sim.hpp"

using namespace vbl;
using mc::Point;

namespace {

std::vector<Point> random_points(int n, double side, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, side);
    std::vector<Point> pts(n);
    for (auto& p : pts) p = {u(gen), u(gen)};
    return pts;
}

// Clips by every bisector, no ordering and no early exit.
double naive_cell_area(const Point& s0, const std::vector<Point>& others, double side) {
    auto poly = mc::ConvexPolygon::square(side);
    for (const auto& s : others) {
        const double nx = s.x - s0.x;
        const double ny = s.y - s0.y;
        poly.clip(nx, ny, 0.5 * (nx * (s.x + s0.x) + ny * (s.y + s0.y)));
    }
    return poly.area();
}

}  // namespace

TEST_CASE("polygon clipping") {
    auto sq = mc::ConvexPolygon::square(2.0);
    CHECK(sq.area() == 4.0);
    CHECK(sq.contains({1.0, 1.0}));
    CHECK(sq.contains({0.0, 2.0}));
    CHECK_FALSE(sq.contains({2.1, 1.0}));

    sq.clip(1.0, 0.0, 0.5);  // x <= 0.5
    CHECK(std::abs(sq.area() - 1.0) < 1e-15);
    sq.clip(1.0, 1.0, 1.0);  // x + y <= 1
    CHECK(std::abs(sq.area() - 0.375) < 1e-15);
    const auto box = sq.bounding_box();
    CHECK(box.x1 == 0.5);
    CHECK(box.y1 == 1.0);
    sq.clip(-1.0, 0.0, -5.0);  // x >= 5 removes everything
    CHECK(sq.empty());
    CHECK(sq.area() == 0.0);
}

TEST_CASE("single cells") {
    std::vector<Point> none;
    CHECK(mc::voronoi_cell_area({3.0, 4.0}, none, 10.0) == 100.0);
    CHECK(std::abs(mc::voronoi_cell_area({2.5, 5.0}, {{7.5, 5.0}}, 10.0) - 50.0) < 1e-12);
    CHECK(std::abs(mc::voronoi_cell_area({7.5, 5.0}, {{2.5, 5.0}}, 10.0) - 50.0) < 1e-12);
    CHECK_THROWS_AS(mc::voronoi_cell_area({11.0, 5.0}, {}, 10.0), DomainError);
    CHECK_THROWS_AS(mc::voronoi_cell_area({1.0, 1.0}, {{1.0, 1.0}}, 10.0), DegenerateError);

    // Ordered clipping with early exit gives the same cell as clipping by all.
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto pts = random_points(200, 10.0, s);
        const Point s0 = pts.back();
        pts.pop_back();
        const double fast = mc::voronoi_cell_area(s0, pts, 10.0);
        CHECK(std::abs(fast - naive_cell_area(s0, pts, 10.0)) < 1e-12);
    }
}

TEST_CASE("cells partition the square") {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto pts = random_points(100, 10.0, 1000 + s);
        double total = 0.0;
        for (double a : mc::all_cell_areas(pts, 10.0)) total += a;
        CHECK(std::abs(total / 100.0 - 1.0) < 1e-9);
    }
}

TEST_CASE("Poisson sampling") {
    auto gen = rng::substream(1, 0, 0);
    CHECK(mc::sample_ppp(0.0, 10.0, gen).empty());
    CHECK_THROWS_AS(mc::sample_ppp(-1.0, 10.0, gen), DomainError);

    double sum = 0.0;
    double sum_sq = 0.0;
    constexpr int draws = 10'000;
    for (int i = 0; i < draws; ++i) {
        auto g = rng::substream(3, 1, i);
        const auto pts = mc::sample_ppp(1.0, 10.0, g);
        for (const auto& p : pts) REQUIRE((p.x >= 0 && p.x < 10 && p.y >= 0 && p.y < 10));
        const double n = double(pts.size());
        sum += n;
        sum_sq += n * n;
    }
    const double mean = sum / draws;
    const double var = (sum_sq - draws * mean * mean) / (draws - 1);
    CHECK(std::abs(mean - 100.0) < 3.0);
    CHECK(std::abs(var / mean - 1.0) < 0.05);
}

TEST_CASE("summarize") {
    const auto s = mc::summarize({1.0, 2.0, 3.0, 4.0});
    CHECK(s.mean == 2.5);
    CHECK(std::abs(s.variance - 5.0 / 3.0) < 1e-15);
    CHECK(std::abs(s.std_err_mean - std::sqrt(5.0 / 12.0)) < 1e-15);
    CHECK(s.second_moment == 7.5);
    CHECK(s.trials == 4);
}

TEST_CASE("simulation determinism") {
    mc::SimConfig cfg;
    cfg.seed0 = {0.0, 0.0};
    cfg.trials = 2000;
    cfg.rng_seed = 99;
    const auto one = mc::simulate_cell_areas(cfg, 1);
    const auto four = mc::simulate_cell_areas(cfg, 4);
    const auto again = mc::simulate_cell_areas(cfg, 3);
    CHECK(one == four);
    CHECK(one == again);
    CHECK(one != mc::simulate_cell_areas(cfg, 1, 5));
    cfg.rng_seed = 100;
    CHECK(one != mc::simulate_cell_areas(cfg, 1));

    const auto h1 = mc::simulate_secure_degrees(10.0, 1.0, {5.0, 5.0}, 10.0, 500, 4, 1);
    const auto h8 = mc::simulate_secure_degrees(10.0, 1.0, {5.0, 5.0}, 10.0, 500, 4, 8);
    CHECK(h1.in_counts == h8.in_counts);
    CHECK(h1.out_counts == h8.out_counts);
}

TEST_CASE("grid scan") {
    mc::SimConfig base;
    base.rng_seed = 12;
    const auto grid = mc::grid_scan(0.3, 3, 500, base, 1);
    REQUIRE(grid.size() == 9);
    CHECK(grid[4].position.x == doctest::Approx(0.3));
    CHECK(grid[4].position.y == doctest::Approx(0.3));
    base.trials = 500;
    base.seed0 = {0.0, 0.0};
    const auto corner = mc::simulate_cell_area(base, 1);
    CHECK(grid[0].stats.mean == corner.mean);
    CHECK(grid[0].stats.variance == corner.variance);
    CHECK_THROWS_AS(mc::grid_scan(0.0, 3, 10, base), DomainError);
    CHECK_THROWS_AS(mc::grid_scan(2.5, 6, 10, base), DomainError);
}

TEST_CASE("secure degrees") {
    const auto h = mc::simulate_secure_degrees(1.0, 100.0, {5.0, 5.0}, 10.0, 2000, 8, 1);
    CHECK(h.in_pmf()[0] > 0.95);
    CHECK(h.out_pmf()[0] > 0.95);
    double total = 0.0;
    for (double f : h.in_pmf()) total += f;
    CHECK(std::abs(total - 1.0) < 1e-12);
    CHECK_THROWS_AS(mc::simulate_secure_degrees(1.0, 1.0, {-1.0, 5.0}, 10.0, 10, 1), DomainError);
    CHECK_THROWS_AS(mc::simulate_secure_degrees(0.0, 1.0, {1.0, 5.0}, 10.0, 10, 1), DomainError);
}

TEST_CASE("thread resolution") {
    CHECK(mc::resolve_threads(3) == 3);
    CHECK(mc::resolve_threads(0) >= 1);
}
