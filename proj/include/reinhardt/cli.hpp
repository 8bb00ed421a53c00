#ifndef REINHARDT_CLI_HPP
#define REINHARDT_CLI_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <reinhardt/construct.hpp>
#include <reinhardt/convex.hpp>
#include <reinhardt/decompose.hpp>
#include <reinhardt/error.hpp>
#include <reinhardt/grid.hpp>
#include <reinhardt/hadamard.hpp>
#include <reinhardt/io.hpp>
#include <reinhardt/oracle.hpp>
#include <reinhardt/series.hpp>

namespace reinhardt::cli
{

using json = nlohmann::json;

inline constexpr int exit_ok = 0;
inline constexpr int exit_input_error = 2;
inline constexpr int exit_infeasible = 3;

struct RunConfig {
    std::string command;
    std::string series_path;
    std::string domain_path;
    std::string samples_path;
    std::string directions_path;
    std::size_t grid_t = 0;
    std::vector<double> point;
    std::vector<double> direction;
    std::int64_t degree = default_degree;
    double epsilon = default_epsilon;
    // <= 0 selects delta(K).
    double delta = 0;
    double margin = default_probe_margin;
    std::vector<std::string> grid;
    std::int64_t per_row = 8;
    std::string out_path;
    std::string mode = "elementary";
    bool estimate_domain = false;
};

namespace detail
{

[[noreturn]] inline void bad(const std::string &what)
{
    reinhardt::detail::fail(errc::invalid_argument, what);
}

inline std::string format_real(double v)
{
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    // Shortest representation that round-trips.
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// "lo,hi,count" (':' also accepted as separator).
inline GridAxis parse_axis(std::string spec)
{
    for (auto &c : spec) {
        if (c == ':') {
            c = ',';
        }
    }
    std::istringstream in(spec);
    GridAxis axis{};
    char c1 = 0, c2 = 0;
    long long count = 0;
    if (!(in >> axis.lo >> c1 >> axis.hi >> c2 >> count) || c1 != ',' || c2 != ',' || count < 1) {
        bad("--grid: expected lo,hi,count but got \"" + spec + "\"");
    }
    axis.count = static_cast<std::size_t>(count);
    return axis;
}

// One spec applies to every axis; otherwise one spec per axis.
inline Grid make_grid(const RunConfig &cfg, std::size_t dimension)
{
    if (cfg.grid.empty()) {
        return Grid::square(dimension, -1.0, 1.0, 11);
    }
    std::vector<GridAxis> axes;
    if (cfg.grid.size() == 1) {
        axes.assign(dimension, parse_axis(cfg.grid.front()));
    } else {
        if (cfg.grid.size() != dimension) {
            bad("--grid: got " + std::to_string(cfg.grid.size()) + " axes for a series of dimension "
                + std::to_string(dimension));
        }
        for (const auto &g : cfg.grid) {
            axes.push_back(parse_axis(g));
        }
    }
    try {
        return Grid(std::move(axes));
    } catch (const error &e) {
        bad(std::string("--grid: ") + e.what());
    }
}

inline json grid_to_json(const Grid &g)
{
    json axes = json::array();
    for (const auto &a : g.axes()) {
        axes.push_back({{"lo", a.lo}, {"hi", a.hi}, {"count", a.count}});
    }
    return axes;
}

inline SimplexDirection direction_flag(const RunConfig &cfg, std::size_t dimension)
{
    if (cfg.direction.size() != dimension) {
        bad("--direction: expected " + std::to_string(dimension) + " coordinates");
    }
    try {
        return SimplexDirection::normalized(cfg.direction);
    } catch (const error &e) {
        bad(std::string("--direction: ") + e.what());
    }
}

inline std::vector<double> point_flag(const RunConfig &cfg, std::size_t dimension, bool strictly_positive)
{
    if (cfg.point.size() != dimension) {
        bad("--point: expected " + std::to_string(dimension) + " coordinates");
    }
    for (auto x : cfg.point) {
        if (!std::isfinite(x) || x < 0 || (strictly_positive && x == 0)) {
            bad(strictly_positive ? "--point: coordinates must be positive" : "--point: coordinates must be non-negative");
        }
    }
    return cfg.point;
}

inline std::vector<SimplexDirection> directions_flag(const RunConfig &cfg, std::size_t dimension)
{
    std::vector<SimplexDirection> dirs;
    if (!cfg.directions_path.empty()) {
        dirs = io::load_directions(cfg.directions_path);
    } else if (cfg.grid_t >= 2) {
        if (dimension != 2) {
            bad("--grid-t: only available in dimension 2; pass --directions instead");
        }
        dirs = uniform_directions_2d(cfg.grid_t);
    } else {
        bad("--directions or --grid-t (>= 2) is required");
    }
    for (const auto &d : dirs) {
        if (d.dimension() != dimension) {
            bad((cfg.directions_path.empty() ? std::string("--grid-t") : cfg.directions_path)
                + ": direction dimension does not match");
        }
    }
    return dirs;
}

inline void check_numeric(const RunConfig &cfg)
{
    if (cfg.degree < 8) {
        bad("--degree: must be at least 8");
    }
    if (!(cfg.epsilon > 0)) {
        bad("--epsilon: must be positive");
    }
    if (!(cfg.margin > 0 && cfg.margin < 0.5)) {
        bad("--margin: must lie in (0, 0.5)");
    }
    if (cfg.delta < 0 || cfg.delta > 2) {
        bad("--delta: must lie in (0, 2] (omit for the automatic radius)");
    }
    if (cfg.per_row < 1) {
        bad("--per-row: must be positive");
    }
}

inline json config_json(const RunConfig &cfg, std::size_t dimension)
{
    return {{"command", cfg.command},
            {"degree", cfg.degree},
            {"epsilon", cfg.epsilon},
            {"margin", cfg.margin},
            {"delta", cfg.delta > 0 ? json(cfg.delta) : json("auto")},
            {"delta_value", cfg.delta > 0 ? cfg.delta : default_window_radius(dimension, cfg.degree)}};
}

inline json verdict_json(const ProbeVerdict &v)
{
    return {{"verdict", convergence_name(v.verdict)},
            {"tail_ratio", std::isnan(v.tail_ratio) ? json(nullptr) : io::extended_to_json(v.tail_ratio)},
            {"partial", io::extended_to_json(v.partial)},
            {"block_root", io::extended_to_json(v.block_root)},
            {"term_root", io::extended_to_json(v.term_root)}};
}

inline json halfspace_json(const HalfSpace &h)
{
    return {{"normal", io::direction_to_json(h.normal)}, {"offset", io::extended_to_json(h.offset)}};
}

class Output
{
public:
    Output(const std::string &path, std::ostream &fallback) : m_out(&fallback)
    {
        if (!path.empty()) {
            m_file.open(path);
            if (!m_file) {
                bad(path + ": cannot open for writing");
            }
            m_out = &m_file;
        }
    }
    std::ostream &stream()
    {
        return *m_out;
    }

private:
    std::ofstream m_file;
    std::ostream *m_out;
};

inline HDomain estimate_domain(const SeriesSpec &s, const RunConfig &cfg, std::span<const SimplexDirection> dirs)
{
    // c_hat samples -> cl conv c as a polyhedron -> supporting half-spaces at dirs.
    std::vector<SimplexDirection> dense;
    if (s.dimension() == 2) {
        dense = uniform_directions_2d(101);
    } else {
        dense.assign(dirs.begin(), dirs.end());
    }
    const auto samples = sample_c_hat(s, dense, cfg.degree, cfg.delta);
    std::vector<HalfSpace> hs;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (std::isfinite(samples.values()[i])) {
            hs.push_back({samples.directions()[i], samples.values()[i]});
        }
    }
    return reduce_to_dense_subset(HDomain(s.dimension(), std::move(hs)), dirs);
}

} // namespace detail

inline int run_command(const RunConfig &cfg, std::ostream &out)
{
    using namespace detail;
    check_numeric(cfg);
    const auto &cmd = cfg.command;

    if (cmd == "probe") {
        const auto s = io::load_series(cfg.series_path);
        const auto r = point_flag(cfg, s.dimension(), false);
        const auto v = probe(s, r, std::max<std::int64_t>(cfg.degree, 32), cfg.margin);
        Output o(cfg.out_path, out);
        o.stream() << json{{"config", config_json(cfg, s.dimension())}, {"point", r}, {"result", verdict_json(v)}}.dump(2)
                   << '\n';
        return exit_ok;
    }
    if (cmd == "domain") {
        const auto s = io::load_series(cfg.series_path);
        const auto grid = make_grid(cfg, s.dimension());
        const auto table = TailTable::for_degree(s, cfg.degree);
        std::ostringstream buf;
        buf << "# command=domain\n# series=" << cfg.series_path << "\n# degree=" << cfg.degree
            << "\n# epsilon=" << format_real(cfg.epsilon) << "\n# grid=" << grid_to_json(grid).dump() << '\n';
        for (std::size_t i = 0; i < s.dimension(); ++i) {
            buf << 's' << (i + 1) << ',';
        }
        buf << "class,psi_hat\n";
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto p = grid.point(i);
            const auto v = classify(table, p, cfg.epsilon);
            for (auto x : p) {
                buf << format_real(x) << ',';
            }
            buf << membership_name(v.membership) << ',' << format_real(v.value) << '\n';
        }
        Output o(cfg.out_path, out);
        o.stream() << buf.str();
        return exit_ok;
    }
    if (cmd == "cfunc") {
        const auto s = io::load_series(cfg.series_path);
        const auto dirs = directions_flag(cfg, s.dimension());
        const auto f = sample_c_hat(s, dirs, cfg.degree, cfg.delta);
        auto j = io::sampled_function_to_json(f);
        j["config"] = config_json(cfg, s.dimension());
        Output o(cfg.out_path, out);
        o.stream() << j.dump(2) << '\n';
        return exit_ok;
    }
    if (cmd == "support") {
        const auto d = io::load_hdomain(cfg.domain_path);
        const auto a = direction_flag(cfg, d.dimension());
        const double v = support_value(d, a);
        Output o(cfg.out_path, out);
        o.stream() << json{{"config", config_json(cfg, d.dimension())}, {"direction", a.coords()}, {"value", io::extended_to_json(v)}}
                          .dump(2)
                   << '\n';
        return exit_ok;
    }
    if (cmd == "envelope") {
        const auto f = io::load_sampled_function(cfg.samples_path);
        if (f.empty()) {
            bad(cfg.samples_path + ": sampled function has no samples");
        }
        const auto a = direction_flag(cfg, f.dimension());
        const double v = convex_closure_value(f, a);
        Output o(cfg.out_path, out);
        o.stream() << json{{"config", config_json(cfg, f.dimension())}, {"direction", a.coords()}, {"value", io::extended_to_json(v)}}
                          .dump(2)
                   << '\n';
        return exit_ok;
    }
    if (cmd == "construct") {
        const auto d = io::load_hdomain(cfg.domain_path);
        const auto dirs = directions_flag(cfg, d.dimension());
        if (cfg.out_path.empty()) {
            bad("--out: construct needs an output path for the series spec");
        }
        const auto s = mainthm_series(d, dirs, cfg.per_row, "constructed from " + cfg.domain_path);
        io::write_json_file(cfg.out_path, io::series_to_json(s));
        const auto &w = std::get<SupportWeighted>(s.rule().node).weights();
        json values = json::array();
        for (auto v : w.values()) {
            values.push_back(io::extended_to_json(v));
        }
        out << json{{"config", config_json(cfg, d.dimension())},
                    {"output", cfg.out_path},
                    {"rows", dirs.size()},
                    {"per_row", cfg.per_row},
                    {"support_values", std::move(values)}}
                   .dump(2)
            << '\n';
        return exit_ok;
    }
    if (cmd == "decompose") {
        const auto s = io::load_series(cfg.series_path);
        const auto dirs = directions_flag(cfg, s.dimension());
        if (cfg.out_path.empty()) {
            bad("--out: decompose needs an output directory");
        }
        std::filesystem::create_directories(cfg.out_path);
        const std::filesystem::path dir(cfg.out_path);
        json manifest{{"config", config_json(cfg, s.dimension())}, {"series", cfg.series_path}, {"mode", cfg.mode}};
        const std::vector<double> probe_point(s.dimension(), 0.5);
        if (cfg.mode == "elementary") {
            const auto d = decompose_elementary(s, dirs, cfg.degree);
            json rows = json::array();
            for (std::size_t n = 0; n < d.parts.size(); ++n) {
                const auto &p = d.parts[n];
                const auto file = "g" + std::to_string(n + 1) + ".json";
                io::write_json_file((dir / file).string(), io::series_to_json(p.series));
                rows.push_back({{"row", n + 1},
                                {"file", file},
                                {"direction", p.direction.coords()},
                                {"supported_terms", p.supported_terms},
                                {"log_growth", io::extended_to_json(p.log_growth)},
                                {"halfspace", p.halfspace ? halfspace_json(*p.halfspace) : json(nullptr)}});
            }
            const auto ex = exactness_check(s, d, probe_point);
            manifest["rows"] = std::move(rows);
            manifest["constant"] = io::complex_to_json(d.constant);
            manifest["exactness"] = {{"point", probe_point},
                                     {"partition_exact", ex.partition_exact},
                                     {"original_partial", io::extended_to_json(ex.original_partial)},
                                     {"reassembled_partial", io::extended_to_json(ex.reassembled_partial)},
                                     {"exact", ex.partition_exact && ex.original_partial == ex.reassembled_partial}};
        } else if (cfg.mode == "simple") {
            HDomain domain;
            if (!cfg.domain_path.empty()) {
                domain = io::load_hdomain(cfg.domain_path);
                if (domain.dimension() != s.dimension()) {
                    bad(cfg.domain_path + ": domain dimension does not match the series");
                }
            } else if (cfg.estimate_domain) {
                domain = estimate_domain(s, cfg, dirs);
            } else {
                bad("--domain or --estimate-domain is required for --mode simple");
            }
            const auto d = decompose_simple(s, domain, dirs, cfg.degree);
            json parts = json::array();
            for (std::size_t n = 0; n < d.parts.size(); ++n) {
                const auto &p = d.parts[n];
                const auto file = "sigma" + std::to_string(n + 1) + ".json";
                io::write_json_file((dir / file).string(), io::series_to_json(p.series));
                parts.push_back({{"part", n + 1},
                                 {"file", file},
                                 {"halfspace", halfspace_json(p.halfspace)},
                                 {"wedge_partner", p.previous ? halfspace_json(*p.previous) : json(nullptr)}});
            }
            std::vector<complex> z(s.dimension(), complex(0.5, 0.0));
            const auto t = telescoping_check(d, z);
            manifest["domain"] = io::hdomain_to_json(domain);
            manifest["parts"] = std::move(parts);
            manifest["telescoping"] = {{"point", probe_point},
                                       {"sigma_total", io::complex_to_json(t.sigma_total)},
                                       {"expected", io::complex_to_json(t.expected)},
                                       {"relative_error", t.relative_error}};
        } else {
            bad("--mode: expected elementary or simple, got \"" + cfg.mode + "\"");
        }
        io::write_json_file((dir / "manifest.json").string(), manifest);
        out << manifest.dump(2) << '\n';
        return exit_ok;
    }
    if (cmd == "slice-radius") {
        const auto s = io::load_series(cfg.series_path);
        const auto r = point_flag(cfg, s.dimension(), true);
        const double v = slice_radius(s, r, cfg.degree);
        Output o(cfg.out_path, out);
        o.stream() << json{{"config", config_json(cfg, s.dimension())}, {"point", r}, {"value", io::extended_to_json(v)}}.dump(2)
                   << '\n';
        return exit_ok;
    }
    if (cmd == "check") {
        const auto s = io::load_series(cfg.series_path);
        const auto grid = make_grid(cfg, s.dimension());
        const auto report = agreement_grid(s, grid, std::max<std::int64_t>(cfg.degree, 32), cfg.epsilon, cfg.margin);
        json points = json::array();
        std::size_t inside = 0, outside = 0, converges = 0, diverges = 0;
        for (const auto &o : report.outcomes) {
            inside += o.estimate.membership == Membership::inside;
            outside += o.estimate.membership == Membership::outside;
            converges += o.probe.verdict == Convergence::converges;
            diverges += o.probe.verdict == Convergence::diverges;
            points.push_back({{"s", o.point},
                              {"class", membership_name(o.estimate.membership)},
                              {"psi_hat", io::extended_to_json(o.estimate.value)},
                              {"probe", convergence_name(o.probe.verdict)},
                              {"agree", is_decisive(o) ? json(agrees(o)) : json(nullptr)}});
        }
        json j{{"config", config_json(cfg, s.dimension())},
               {"series", cfg.series_path},
               {"grid", grid_to_json(grid)},
               {"summary",
                {{"points", report.outcomes.size()},
                 {"decisive", report.decisive},
                 {"agreeing", report.agreeing},
                 {"agreement", report.fraction()},
                 {"inside", inside},
                 {"outside", outside},
                 {"converges", converges},
                 {"diverges", diverges}}},
               {"points", std::move(points)}};
        Output o(cfg.out_path, out);
        o.stream() << j.dump(2) << '\n';
        return exit_ok;
    }
    bad("unknown command \"" + cmd + "\"");
}

// Maps library errors onto exit codes: 3 for empty or unbounded-support
// conditions, 2 for every other input problem.
inline int run(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
    try {
        return run_command(cfg, out);
    } catch (const error &e) {
        err << "error: " << e.what() << '\n';
        return e.code() == errc::empty_domain || e.code() == errc::infinite_support ? exit_infeasible : exit_input_error;
    } catch (const std::filesystem::filesystem_error &e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    } catch (const nlohmann::json::exception &e) {
        err << "error: malformed input (" << e.what() << ")\n";
        return exit_input_error;
    }
}

inline int main(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Domains of convergence of multivariate power series"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_degree = [&](CLI::App *sub) {
        sub->add_option("--degree,-K", cfg.degree, "truncation degree K")->capture_default_str();
    };
    auto add_epsilon = [&](CLI::App *sub) {
        sub->add_option("--epsilon", cfg.epsilon, "membership band epsilon")->capture_default_str();
    };
    auto add_margin = [&](CLI::App *sub) {
        sub->add_option("--margin", cfg.margin, "probe margin")->capture_default_str();
    };
    auto add_grid = [&](CLI::App *sub) {
        sub->add_option("--grid", cfg.grid, "lo,hi,count (once for all axes, or once per axis)");
    };
    auto add_out = [&](CLI::App *sub) {
        sub->add_option("--out,-o", cfg.out_path, "output path");
    };
    auto add_series = [&](CLI::App *sub) {
        sub->add_option("series", cfg.series_path, "series spec (JSON)")->required();
    };
    auto add_directions = [&](CLI::App *sub) {
        sub->add_option("--directions", cfg.directions_path, "directions file (JSON)");
        sub->add_option("--grid-t", cfg.grid_t, "M uniform directions (t, 1-t) in dimension 2");
    };

    auto *probe_cmd = app.add_subcommand("probe", "absolute-convergence probe at a point r");
    add_series(probe_cmd);
    probe_cmd->add_option("--point", cfg.point, "point r (non-negative)")->delimiter(',')->required();
    add_degree(probe_cmd);
    add_margin(probe_cmd);
    add_out(probe_cmd);

    auto *domain_cmd = app.add_subcommand("domain", "classify a grid of log-points (CSV)");
    add_series(domain_cmd);
    add_grid(domain_cmd);
    add_degree(domain_cmd);
    domain_cmd->add_option("--epsilon,--margin", cfg.epsilon, "membership band epsilon")->capture_default_str();
    add_out(domain_cmd);

    auto *cfunc_cmd = app.add_subcommand("cfunc", "sample the direction functional c(alpha)");
    add_series(cfunc_cmd);
    add_directions(cfunc_cmd);
    add_degree(cfunc_cmd);
    cfunc_cmd->add_option("--delta", cfg.delta, "window radius (default: automatic)");
    add_out(cfunc_cmd);

    auto *support_cmd = app.add_subcommand("support", "support function of a half-space domain");
    support_cmd->add_option("--domain", cfg.domain_path, "H-domain (JSON)")->required();
    support_cmd->add_option("--direction", cfg.direction, "direction alpha")->delimiter(',')->required();
    add_out(support_cmd);

    auto *envelope_cmd = app.add_subcommand("envelope", "convex closure of sampled values");
    envelope_cmd->add_option("--samples", cfg.samples_path, "sampled function (JSON)")->required();
    envelope_cmd->add_option("--direction", cfg.direction, "direction alpha")->delimiter(',')->required();
    add_out(envelope_cmd);

    auto *construct_cmd = app.add_subcommand("construct", "build a series for a prescribed domain");
    construct_cmd->add_option("--domain", cfg.domain_path, "H-domain (JSON)")->required();
    add_directions(construct_cmd);
    construct_cmd->add_option("--per-row", cfg.per_row, "indices per direction")->capture_default_str();
    add_out(construct_cmd);

    auto *decompose_cmd = app.add_subcommand("decompose", "elementary or simple decomposition");
    add_series(decompose_cmd);
    decompose_cmd->add_option("--mode", cfg.mode, "elementary | simple")->capture_default_str();
    decompose_cmd->add_option("--domain", cfg.domain_path, "H-domain of the series (simple mode)");
    decompose_cmd->add_flag("--estimate-domain", cfg.estimate_domain, "estimate the domain from c(alpha)");
    decompose_cmd->add_option("--delta", cfg.delta, "window radius for --estimate-domain");
    add_directions(decompose_cmd);
    add_degree(decompose_cmd);
    add_out(decompose_cmd);

    auto *slice_cmd = app.add_subcommand("slice-radius", "radius of the slice zeta -> g(zeta r)");
    add_series(slice_cmd);
    slice_cmd->add_option("--point", cfg.point, "point r (positive)")->delimiter(',')->required();
    add_degree(slice_cmd);
    add_out(slice_cmd);

    auto *check_cmd = app.add_subcommand("check", "estimator vs brute-force oracle on a grid");
    add_series(check_cmd);
    add_grid(check_cmd);
    add_degree(check_cmd);
    add_epsilon(check_cmd);
    add_margin(check_cmd);
    add_out(check_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    return run(cfg, out, err);
}

} // namespace reinhardt::cli

#endif
