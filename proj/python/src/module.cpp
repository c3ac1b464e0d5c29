#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "vbl/errors.hpp"
#include "vbl/mc_sim.hpp"
#include "vbl/moments.hpp"
#include "vbl/secrecy.hpp"
#include "vbl/special_functions.hpp"
#include "vbl/void_geometry.hpp"

namespace py = pybind11;
using namespace vbl;

namespace {

geom::SeedLocation location_from(const std::string& name) {
    if (name == "corner") return geom::Corner{};
    if (name == "edge") return geom::Edge{};
    if (name == "bulk") return geom::Bulk{};
    throw DomainError("location must be 'corner', 'edge' or 'bulk'");
}

const char* method_name(moments::Method m) {
    switch (m) {
        case moments::Method::closed_form: return "closed_form";
        case moments::Method::quadrature: return "quadrature";
        case moments::Method::bound_upper: return "bound_upper";
        default: return "bound_lower";
    }
}

quad::QuadSpec spec_with(quad::QuadSpec spec, py::object rel_tol) {
    if (!rel_tol.is_none()) spec.rel_tol = rel_tol.cast<double>();
    return spec;
}

py::dict stats_dict(const mc::SimStats& s) {
    py::dict d;
    d["mean"] = s.mean;
    d["variance"] = s.variance;
    d["std_err"] = s.std_err_mean;
    d["trials"] = s.trials;
    d["second_moment"] = s.second_moment;
    d["std_err_second_moment"] = s.std_err_second_moment;
    d["std_err_variance"] = s.std_err_variance;
    return d;
}

}  // namespace

PYBIND11_MODULE(_vbl, m) {
    m.doc() = "Cell-size moments of boundary Poisson-Voronoi cells";

    auto base = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<RegionError>(m, "RegionError", base.ptr());
    py::register_exception<DegenerateError>(m, "DegenerateError", base.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_RuntimeError);

    // special functions
    m.def("erf", &sf::erf, py::arg("x"));
    m.def("erfc", &sf::erfc, py::arg("x"));
    m.def("bessel_i1", [](double x) { return sf::bessel_i1(x); }, py::arg("x"));
    m.def("struve_l1", [](double x) { return sf::struve_l1(x); }, py::arg("x"));
    m.def("struve_m1", [](double x) { return sf::struve_m1(x); }, py::arg("x"));
    m.def("expint_upper", [](double x) { return sf::expint_upper(x); }, py::arg("x"));
    m.def("ln_gamma", &sf::ln_gamma, py::arg("x"));
    m.def("hyp2f1_secrecy", [](double k, int n, double z) { return sf::hyp2f1_secrecy(k, n, z); }, py::arg("k"),
          py::arg("n"), py::arg("z"));

    // void geometry
    m.def("phi1", &geom::phi1, py::arg("r"), py::arg("a"));
    m.def("phi2", &geom::phi2, py::arg("r"), py::arg("a"));
    m.def("phi0", &geom::phi0, py::arg("r"), py::arg("h"));
    m.def("void_area_quadrant", [](double r, double phi, double a) { return geom::void_area_quadrant({r, phi}, a); },
          py::arg("r"), py::arg("phi"), py::arg("a"));
    m.def("void_area_halfplane", [](double r, double phi, double h) { return geom::void_area_halfplane({r, phi}, h); },
          py::arg("r"), py::arg("phi"), py::arg("h"));
    m.def("jacobian_factor", &geom::jacobian_factor, py::arg("w1"), py::arg("w2"));
    m.def("normalized_void_bulk", &geom::normalized_void_bulk, py::arg("w1"), py::arg("w2"));
    m.def("normalized_void_corner", &geom::normalized_void_corner, py::arg("theta"), py::arg("w1"), py::arg("w2"));
    m.def("normalized_void_edge", &geom::normalized_void_edge, py::arg("theta"), py::arg("w1"), py::arg("w2"));

    // moments
    py::class_<moments::MomentResult>(m, "MomentResult")
        .def_readonly("value", &moments::MomentResult::value)
        .def_readonly("err_estimate", &moments::MomentResult::err_estimate)
        .def_readonly("order", &moments::MomentResult::order)
        .def_property_readonly("method", [](const moments::MomentResult& r) { return method_name(r.method); })
        .def("__float__", [](const moments::MomentResult& r) { return r.value; })
        .def("__repr__", [](const moments::MomentResult& r) {
            return "MomentResult(value=" + std::to_string(r.value) + ", method='" + method_name(r.method) + "')";
        });

    py::class_<moments::GammaParams>(m, "GammaParams")
        .def(py::init<double, double>(), py::arg("k"), py::arg("nu"))
        .def_readwrite("k", &moments::GammaParams::k)
        .def_readwrite("nu", &moments::GammaParams::nu)
        .def_property_readonly("mean", &moments::GammaParams::mean)
        .def_property_readonly("variance", &moments::GammaParams::variance)
        .def("__repr__", [](const moments::GammaParams& g) {
            return "GammaParams(k=" + std::to_string(g.k) + ", nu=" + std::to_string(g.nu) + ")";
        });

    m.def("mean_corner", &moments::mean_corner);
    m.def("mean_edge", &moments::mean_edge);
    m.def(
        "mean_quadrant",
        [](double a, py::object rel_tol) { return moments::mean_quadrant(a, spec_with(moments::default_mean_spec(), rel_tol)); },
        py::arg("a"), py::arg("rel_tol") = py::none());
    m.def(
        "mean_halfplane",
        [](double h, py::object rel_tol) { return moments::mean_halfplane(h, spec_with(moments::default_mean_spec(), rel_tol)); },
        py::arg("h"), py::arg("rel_tol") = py::none());
    m.def("upper_bound_mean_quadrant", &moments::upper_bound_mean_quadrant, py::arg("a"));
    m.def("lower_bound_mean_quadrant", &moments::lower_bound_mean_quadrant, py::arg("a"));
    m.def("lower_bound_mean_halfplane", &moments::lower_bound_mean_halfplane, py::arg("h"));
    m.def("second_moment", [](const std::string& loc) { return moments::second_moment_at(location_from(loc)); },
          py::arg("location"));
    m.def("fit_gamma", &moments::fit_gamma, py::arg("mean"), py::arg("second_moment"));
    m.def("gamma_params", [](const std::string& loc) { return moments::gamma_params_at(location_from(loc)); },
          py::arg("location"));

    // secrecy
    m.def("in_degree_pmf", &secrecy::in_degree_pmf, py::arg("n"), py::arg("p"), py::arg("gamma"));
    m.def("in_degree_cdf", &secrecy::in_degree_cdf, py::arg("n"), py::arg("p"), py::arg("gamma"));
    m.def("out_degree_pmf", &secrecy::out_degree_pmf, py::arg("n"), py::arg("p"));
    m.def("out_degree_cdf", &secrecy::out_degree_cdf, py::arg("n"), py::arg("p"));
    m.def("in_isolation", &secrecy::in_isolation, py::arg("p"), py::arg("gamma"));
    m.def("out_isolation", &secrecy::out_isolation, py::arg("p"));
    m.def(
        "isolation_comparison",
        [](double lambda_l, const std::vector<double>& grid, const std::string& loc) {
            py::list out;
            for (const auto& r : secrecy::isolation_comparison(lambda_l, grid, location_from(loc)))
                out.append(py::make_tuple(r.lambda_e, r.p_in_isolation, r.p_out_isolation));
            return out;
        },
        py::arg("lambda_l"), py::arg("lambda_e"), py::arg("location"));

    // Monte Carlo
    m.def(
        "voronoi_cell_area",
        [](std::pair<double, double> seed0, const std::vector<std::pair<double, double>>& others, double side) {
            std::vector<mc::Point> pts;
            pts.reserve(others.size());
            for (const auto& [x, y] : others) pts.push_back({x, y});
            return mc::voronoi_cell_area({seed0.first, seed0.second}, std::move(pts), side);
        },
        py::arg("seed0"), py::arg("others"), py::arg("side"));
    m.def(
        "simulate_cell_area",
        [](std::pair<double, double> at, double side, double intensity, long trials, std::uint64_t rng_seed,
           int threads) {
            mc::SimConfig cfg;
            cfg.seed0 = {at.first, at.second};
            cfg.side_L = side;
            cfg.intensity = intensity;
            cfg.trials = trials;
            cfg.rng_seed = rng_seed;
            mc::SimStats s;
            {
                py::gil_scoped_release release;
                s = mc::simulate_cell_area(cfg, threads);
            }
            return stats_dict(s);
        },
        py::arg("at"), py::arg("side") = 10.0, py::arg("intensity") = 1.0, py::arg("trials") = 10'000,
        py::arg("rng_seed") = 1, py::arg("threads") = 0);
    m.def(
        "simulate_secure_degrees",
        [](double lambda_l, double lambda_e, std::pair<double, double> at, double side, long trials,
           std::uint64_t rng_seed, int threads) {
            mc::DegreeHistograms h;
            {
                py::gil_scoped_release release;
                h = mc::simulate_secure_degrees(lambda_l, lambda_e, {at.first, at.second}, side, trials, rng_seed,
                                                threads);
            }
            return py::make_tuple(h.in_pmf(), h.out_pmf());
        },
        py::arg("lambda_l"), py::arg("lambda_e"), py::arg("at"), py::arg("side") = 10.0, py::arg("trials") = 10'000,
        py::arg("rng_seed") = 1, py::arg("threads") = 0);
}
