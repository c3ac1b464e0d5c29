#include "vbl/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "vbl/errors.hpp"
#include "vbl/mc_sim.hpp"
#include "vbl/moments.hpp"
#include "vbl/secrecy.hpp"

#ifndef VBL_VERSION
#define VBL_VERSION "0.0.0"
#endif

namespace vbl::cli {

namespace {

using nlohmann::ordered_json;

double to_number(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

std::vector<double> parse_one(const std::string& token) {
    const auto parts = split(token, ':');
    if (parts.size() == 1) return {to_number(parts[0])};
    if (parts.size() != 3) throw std::invalid_argument("range must be start:stop:step or start:stop:log");
    const double start = to_number(parts[0]);
    const double stop = to_number(parts[1]);
    const std::string& third = parts[2];
    std::vector<double> out;
    if (third.rfind("log", 0) == 0) {
        if (!(start > 0.0 && stop > start)) throw std::invalid_argument("log range needs 0 < start < stop");
        long n = 0;
        if (third.size() == 3) {
            n = std::lround(10.0 * std::log10(stop / start)) + 1;
        } else {
            const double count = to_number(third.substr(3));
            if (count < 2 || count != std::floor(count)) throw std::invalid_argument("log range needs N >= 2 points");
            n = static_cast<long>(count);
        }
        n = std::max(n, 2L);
        for (long i = 0; i < n; ++i) out.push_back(i + 1 == n ? stop : start * std::pow(stop / start, double(i) / (n - 1)));
        return out;
    }
    const double step = to_number(third);
    if (!(step > 0.0) || stop < start) throw std::invalid_argument("range needs step > 0 and stop >= start");
    const auto n = static_cast<long>(std::floor((stop - start) / step * (1.0 + 1e-12) + 1e-9)) + 1;
    if (n > 1'000'000) throw std::invalid_argument("range has too many points");
    for (long i = 0; i < n; ++i) out.push_back(start + i * step);
    return out;
}

std::string format_g6(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

ordered_json cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return nullptr;
                return v;
            } else {
                return v;
            }
        },
        c);
}

std::string cell_csv(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "";
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, long>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, double>) {
                return format_g6(v);
            } else {
                return v;
            }
        },
        c);
}

// ---- mean --------------------------------------------------------------------

struct MeanArgs {
    bool corner = false;
    bool edge = false;
    std::string corner_offset;
    std::string halfplane_offset;
    double tol = moments::default_mean_spec().rel_tol;
};

int cmd_mean(const MeanArgs& args, Envelope& env) {
    const int chosen = int(args.corner) + int(args.edge) + int(!args.corner_offset.empty()) +
                       int(!args.halfplane_offset.empty());
    if (chosen != 1)
        throw CLI::ValidationError("mean: give exactly one of --corner, --edge, --corner-offset, --halfplane-offset");
    quad::QuadSpec spec = moments::default_mean_spec();
    spec.rel_tol = args.tol;
    spec.validate();

    env.command = "mean";
    env.columns = {"geometry", "position", "mean", "err_estimate", "lower_bound", "upper_bound", "converged"};
    env.parameters["tol"] = args.tol;

    int status = kOk;
    auto add = [&](const std::string& geometry, double pos, auto&& compute, const Cell& lower, const Cell& upper) {
        double value = 0.0;
        double err = 0.0;
        bool ok = true;
        try {
            const auto m = compute();
            value = m.value;
            err = m.err_estimate;
        } catch (const QuadratureError& e) {
            value = e.value();
            err = e.err_estimate();
            ok = false;
            status = kNumeric;
        }
        env.rows.push_back({geometry, pos, value, err, lower, upper, ok});
    };

    if (args.corner) {
        env.parameters["location"] = "corner";
        add("quadrant", 0.0, [] { return moments::mean_corner(); }, moments::lower_bound_mean_quadrant(0.0).value,
            moments::upper_bound_mean_quadrant(0.0).value);
    } else if (args.edge) {
        env.parameters["location"] = "edge";
        add("halfplane", 0.0, [] { return moments::mean_edge(); }, moments::lower_bound_mean_halfplane(0.0).value,
            Cell{});
    } else if (!args.corner_offset.empty()) {
        const auto grid = parse_range(args.corner_offset);
        env.parameters["corner_offset"] = grid;
        for (double a : grid) {
            if (!(a >= 0.0)) throw DomainError("mean: corner offsets must be >= 0");
            add("quadrant", a, [&] { return moments::mean_quadrant(a, spec); },
                moments::lower_bound_mean_quadrant(a).value, moments::upper_bound_mean_quadrant(a).value);
        }
    } else {
        const auto grid = parse_range(args.halfplane_offset);
        env.parameters["halfplane_offset"] = grid;
        for (double h : grid) {
            if (!(h >= 0.0)) throw DomainError("mean: half-plane offsets must be >= 0");
            add("halfplane", h, [&] { return moments::mean_halfplane(h, spec); },
                moments::lower_bound_mean_halfplane(h).value, Cell{});
        }
    }
    return status;
}

// ---- table1 ------------------------------------------------------------------

int cmd_table1(Envelope& env) {
    env.command = "table1";
    env.columns = {"location", "mean", "second_moment", "variance", "k", "nu"};
    const std::pair<const char*, geom::SeedLocation> locs[] = {
        {"corner", geom::Corner{}}, {"edge", geom::Edge{}}, {"bulk", geom::Bulk{}}};
    for (const auto& [name, loc] : locs) {
        const double mean = moments::mean_at(loc).value;
        const double second = moments::second_moment_at(loc).value;
        const auto g = moments::fit_gamma(mean, second);
        env.rows.push_back({std::string(name), mean, second, second - mean * mean, g.k, g.nu});
    }
    return kOk;
}

// ---- secrecy -----------------------------------------------------------------

struct SecrecyArgs {
    double lambda_l = 10.0;
    std::string lambda_e = "1";
    std::string location;
    int n_max = 30;
};

std::vector<std::pair<std::string, geom::SeedLocation>> secrecy_locations(const std::string& name) {
    std::vector<std::pair<std::string, geom::SeedLocation>> all = {
        {"corner", geom::Corner{}}, {"edge", geom::Edge{}}, {"bulk", geom::Bulk{}}};
    if (name.empty()) return all;
    for (auto& entry : all)
        if (entry.first == name) return {entry};
    throw CLI::ValidationError("--location must be corner, edge or bulk");
}

int cmd_secrecy(const std::string& sub, const SecrecyArgs& args, Envelope& env) {
    const auto locations = secrecy_locations(args.location);
    const auto lambda_e = parse_range(args.lambda_e);
    if (!(args.lambda_l > 0.0)) throw DomainError("--lambda-l must be > 0");
    for (double le : lambda_e)
        if (!(le > 0.0)) throw DomainError("--lambda-e must be > 0");
    if (args.n_max < 0) throw DomainError("--n-max must be >= 0");

    env.command = "secrecy " + sub;
    env.parameters["lambda_l"] = args.lambda_l;
    env.parameters["lambda_e"] = lambda_e;
    env.parameters["location"] = args.location.empty() ? "all" : args.location;

    if (sub == "isolation") {
        env.columns = {"location", "lambda_e", "p", "k", "nu", "p_in_isolation", "p_out_isolation"};
        for (const auto& [name, loc] : locations) {
            const auto g = moments::gamma_params_at(loc);
            for (const auto& row : secrecy::isolation_comparison(args.lambda_l, lambda_e, g))
                env.rows.push_back({name, row.lambda_e, args.lambda_l / row.lambda_e, g.k, g.nu, row.p_in_isolation,
                                    row.p_out_isolation});
        }
        return kOk;
    }

    env.parameters["n_max"] = args.n_max;
    const bool pmf = sub == "pmf";
    env.columns = {"location", "lambda_e", "p", "n", pmf ? "in_pmf" : "in_cdf", pmf ? "out_pmf" : "out_cdf"};
    for (const auto& [name, loc] : locations) {
        const auto g = moments::gamma_params_at(loc);
        for (double le : lambda_e) {
            const double p = secrecy::IntensityRatio(args.lambda_l, le).p();
            for (int n = 0; n <= args.n_max; ++n) {
                const double in = pmf ? secrecy::in_degree_pmf(n, p, g) : secrecy::in_degree_cdf(n, p, g);
                const double out = pmf ? secrecy::out_degree_pmf(n, p) : secrecy::out_degree_cdf(n, p);
                env.rows.push_back({name, le, p, long(n), in, out});
            }
        }
    }
    return kOk;
}

// ---- simulate ----------------------------------------------------------------

struct SimArgs {
    long trials = 10'000;
    std::uint64_t rng_seed = 1;
    double side = 10.0;
    double intensity = 1.0;
    std::string at = "corner";
    double delta = 0.3;
    int n = 11;
    double lambda_l = 10.0;
    double lambda_e = 1.0;
    int threads = 0;
};

mc::Point resolve_at(const std::string& at, double side) {
    if (at == "corner") return {0.0, 0.0};
    if (at == "edge") return {0.5 * side, 0.0};
    if (at == "center" || at == "bulk") return {0.5 * side, 0.5 * side};
    const auto parts = split(at, ',');
    if (parts.size() == 2) {
        try {
            return {to_number(parts[0]), to_number(parts[1])};
        } catch (const std::invalid_argument&) {
        }
    }
    throw CLI::ValidationError("--at must be corner, edge, center or X,Y");
}

std::vector<Cell> stats_row(const mc::Point& p, const mc::SimStats& s) {
    return {p.x, p.y, s.mean, s.variance, s.std_err_mean, s.trials, s.second_moment, s.std_err_second_moment};
}

int cmd_simulate(const std::string& sub, const SimArgs& args, Envelope& env) {
    if (args.trials < 1) throw DomainError("--trials must be >= 1");
    env.command = "simulate " + sub;
    env.rng_seed = args.rng_seed;
    env.parameters["trials"] = args.trials;
    env.parameters["side"] = args.side;
    const std::vector<std::string> stat_cols = {"position_x", "position_y", "mean", "variance",
                                                "std_err", "trials", "second_moment", "std_err_second_moment"};

    if (sub == "cell") {
        mc::SimConfig cfg;
        cfg.side_L = args.side;
        cfg.intensity = args.intensity;
        cfg.seed0 = resolve_at(args.at, args.side);
        cfg.trials = args.trials;
        cfg.rng_seed = args.rng_seed;
        env.parameters["intensity"] = args.intensity;
        env.parameters["at"] = args.at;
        env.columns = stat_cols;
        env.rows.push_back(stats_row(cfg.seed0, mc::simulate_cell_area(cfg, args.threads)));
    } else if (sub == "grid") {
        mc::SimConfig base;
        base.side_L = args.side;
        base.intensity = args.intensity;
        base.rng_seed = args.rng_seed;
        env.parameters["intensity"] = args.intensity;
        env.parameters["delta"] = args.delta;
        env.parameters["n"] = args.n;
        env.columns = stat_cols;
        for (const auto& e : mc::grid_scan(args.delta, args.n, args.trials, base, args.threads))
            env.rows.push_back(stats_row(e.position, e.stats));
    } else {
        const auto seed0 = resolve_at(args.at, args.side);
        env.parameters["lambda_l"] = args.lambda_l;
        env.parameters["lambda_e"] = args.lambda_e;
        env.parameters["at"] = args.at;
        const auto hist = mc::simulate_secure_degrees(args.lambda_l, args.lambda_e, seed0, args.side, args.trials,
                                                      args.rng_seed, args.threads);
        env.columns = {"n", "in_count", "in_pmf", "out_count", "out_pmf"};
        const std::size_t len = std::max(hist.in_counts.size(), hist.out_counts.size());
        const double t = static_cast<double>(hist.trials);
        for (std::size_t n = 0; n < len; ++n) {
            const long in = n < hist.in_counts.size() ? hist.in_counts[n] : 0;
            const long out = n < hist.out_counts.size() ? hist.out_counts[n] : 0;
            env.rows.push_back({long(n), in, in / t, out, out / t});
        }
    }
    return kOk;
}

}  // namespace

std::string tool_version() { return VBL_VERSION; }

std::vector<double> parse_range(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty value list");
    std::vector<double> out;
    for (const auto& token : split(text, ',')) {
        if (token.empty()) throw std::invalid_argument("empty entry in value list");
        const auto part = parse_one(token);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

ordered_json Envelope::to_json() const {
    ordered_json j;
    j["command"] = command;
    j["tool_version"] = tool_version();
    j["rng_seed"] = rng_seed ? ordered_json(*rng_seed) : ordered_json(nullptr);
    j["parameters"] = parameters;
    j["columns"] = columns;
    ordered_json rows_json = ordered_json::array();
    for (const auto& row : rows) {
        ordered_json r = ordered_json::object();
        for (std::size_t i = 0; i < columns.size(); ++i) r[columns[i]] = cell_json(row[i]);
        rows_json.push_back(std::move(r));
    }
    j["rows"] = std::move(rows_json);
    return j;
}

std::string Envelope::to_csv() const {
    std::string s;
    for (std::size_t i = 0; i < columns.size(); ++i) s += (i ? "," : "") + columns[i];
    s += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + cell_csv(row[i]);
        s += '\n';
    }
    return s;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cell-size moments of boundary Poisson-Voronoi cells and secure degree distributions"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);

    std::string format = "json";
    std::string out_path;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", out_path, "Write output to FILE instead of stdout");
    };

    MeanArgs mean_args;
    auto* mean = app.add_subcommand("mean", "Mean cell area near a quadrant corner or half-plane edge");
    mean->add_flag("--corner", mean_args.corner, "Seed at the quadrant corner");
    mean->add_flag("--edge", mean_args.edge, "Seed on the half-plane boundary");
    mean->add_option("--corner-offset", mean_args.corner_offset, "Distances a from the corner (list or range)");
    mean->add_option("--halfplane-offset", mean_args.halfplane_offset, "Distances h from the boundary (list or range)");
    mean->add_option("--tol", mean_args.tol, "Relative quadrature tolerance");
    add_common(mean);

    auto* table1 = app.add_subcommand("table1", "Moments and Gamma fit at corner, edge and bulk");
    add_common(table1);

    SecrecyArgs sec_args;
    auto* secrecy = app.add_subcommand("secrecy", "Secure in- and out-degree distributions");
    secrecy->require_subcommand(1);
    for (const char* name : {"pmf", "cdf", "isolation"}) {
        auto* sub = secrecy->add_subcommand(name);
        sub->add_option("--lambda-l", sec_args.lambda_l, "Legitimate-user intensity");
        sub->add_option("--lambda-e", sec_args.lambda_e, "Eavesdropper intensity (list or range)");
        sub->add_option("--location", sec_args.location, "corner, edge or bulk (default: all)");
        if (std::string(name) != "isolation") sub->add_option("--n-max", sec_args.n_max, "Largest degree");
        add_common(sub);
    }

    SimArgs sim_args;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo Voronoi simulations");
    simulate->require_subcommand(1);
    for (const char* name : {"cell", "grid", "degree"}) {
        const std::string n = name;
        auto* sub = simulate->add_subcommand(name);
        sub->add_option("--trials", sim_args.trials, n == "grid" ? "Trials per grid position" : "Trials");
        sub->add_option("--rng-seed", sim_args.rng_seed, "Random seed");
        sub->add_option("--side", sim_args.side, "Side L of the square window");
        sub->add_option("--threads", sim_args.threads, "Worker threads (default: VBL_THREADS or all cores)");
        if (n != "degree") sub->add_option("--intensity", sim_args.intensity, "Seed intensity");
        if (n != "grid") sub->add_option("--at", sim_args.at, "corner, edge, center or X,Y");
        if (n == "grid") {
            sub->add_option("--delta", sim_args.delta, "Grid spacing");
            sub->add_option("--n", sim_args.n, "Grid points per axis");
        }
        if (n == "degree") {
            sub->add_option("--lambda-l", sim_args.lambda_l, "Legitimate-user intensity");
            sub->add_option("--lambda-e", sim_args.lambda_e, "Eavesdropper intensity");
        }
        add_common(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    Envelope env;
    int status = kOk;
    try {
        if (*mean) {
            status = cmd_mean(mean_args, env);
        } else if (*table1) {
            status = cmd_table1(env);
        } else if (*secrecy) {
            status = cmd_secrecy(secrecy->get_subcommands().front()->get_name(), sec_args, env);
        } else {
            status = cmd_simulate(simulate->get_subcommands().front()->get_name(), sim_args, env);
        }
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumeric;
    }

    const std::string text = format == "csv" ? env.to_csv() : env.to_json().dump(2) + "\n";
    if (out_path.empty()) {
        out << text;
    } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << out_path << '\n';
            return kUsage;
        }
        file << text;
    }
    if (status != kOk) err << "warning: some quadratures did not converge; see the converged column\n";
    return status;
}

}  // namespace vbl::cli
