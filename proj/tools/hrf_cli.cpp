// Command-line surface for the homogeneous Ricci flow engine: catalog
// listing, fixed points at infinity, the classification table, trajectory
// and ancient-solution curve export.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hrf/ancient.hpp"
#include "hrf/catalog.hpp"
#include "hrf/einstein.hpp"
#include "hrf/flow.hpp"
#include "hrf/io.hpp"
#include "hrf/poincare.hpp"
#include "hrf/ricci.hpp"

namespace {

std::vector<double> parse_vector(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw std::invalid_argument("empty coordinate list");
    return out;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << content;
}

int cmd_catalog(const std::string& format) {
    if (format == "json") {
        std::cout << hrf::catalog_to_json(hrf::catalog()).dump(2) << "\n";
        return 0;
    }
    for (const auto& entry : hrf::catalog()) {
        std::ostringstream os;
        os << entry.space.name() << "  r=" << entry.space.rank();
        if (entry.expected_fixed_points > 0) os << "  N=" << entry.expected_fixed_points;
        os << "  dims=(";
        for (int i = 0; i < entry.space.rank(); ++i)
            os << (i ? "," : "") << entry.space.dims()[i];
        os << ")";
        std::cout << os.str() << "\n";
    }
    return 0;
}

int cmd_table1() {
    std::vector<hrf::Table1Row> rows;
    bool all_match = true;
    for (const auto& entry : hrf::catalog()) {
        if (entry.expected_fixed_points <= 0) {
            std::cerr << "note: no embedded expectation for " << entry.space.name()
                      << ", skipping\n";
            continue;
        }
        rows.push_back(hrf::table1_row(entry));
        all_match = all_match && rows.back().matches;
    }
    std::cout << hrf::render_table1(rows);
    if (!all_match) {
        std::cerr << "table mismatch against embedded classification\n";
        return 1;
    }
    return 0;
}

int cmd_fixed_points(const std::string& name, const std::string& format) {
    const auto& entry = hrf::catalog_entry(name);
    const auto points = hrf::find_fixed_points_at_infinity(entry.space);
    if (entry.expected_fixed_points > 0 &&
        static_cast<int>(points.size()) != entry.expected_fixed_points)
        std::cerr << "warning: found " << points.size() << " fixed points, expected "
                  << entry.expected_fixed_points << "\n";

    if (format == "json") {
        std::cout << hrf::fixed_point_report(entry.space, points).dump(2) << "\n";
    } else if (format == "csv") {
        std::ostringstream os;
        os << "index,lambda,d_stb,d_unstb,is_kahler_einstein";
        for (int i = 1; i <= entry.space.rank(); ++i) os << ",e" << i;
        os << "\n";
        for (size_t j = 0; j < points.size(); ++j) {
            os << (j + 1) << ',' << hrf::format_sig(points[j].lambda, 12) << ','
               << points[j].d_stb << ',' << points[j].d_unstb << ','
               << (hrf::is_kahler_einstein(points[j]) ? 1 : 0);
            for (double v : points[j].representative) os << ',' << hrf::format_sig(v, 12);
            os << "\n";
        }
        std::cout << os.str();
    } else {
        std::cout << name << ": " << points.size() << " fixed points at infinity\n";
        for (size_t j = 0; j < points.size(); ++j) {
            const auto& fp = points[j];
            std::cout << "  e" << (j + 1) << " = (";
            for (size_t i = 0; i < fp.representative.size(); ++i)
                std::cout << (i ? ", " : "") << hrf::format_sig(fp.representative[i], 6);
            std::cout << ")  lambda=" << hrf::format_sig(fp.lambda, 6)
                      << "  d_stb=" << fp.d_stb << "  d_unstb=" << fp.d_unstb
                      << (hrf::is_kahler_einstein(fp) ? "  [Kahler-Einstein]" : "") << "\n";
        }
    }
    return 0;
}

int cmd_einstein(const std::string& name, const std::string& format) {
    const auto& entry = hrf::catalog_entry(name);
    hrf::EinsteinSolverOptions opts;
    opts.expected_count = entry.expected_fixed_points;
    const auto metrics = hrf::find_einstein_metrics(entry.space, opts);
    if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& m : metrics) arr.push_back({{"x", m.x}, {"lambda", m.lambda}});
        std::cout << nlohmann::json{{"space", name}, {"metrics", arr}}.dump(2) << "\n";
        return 0;
    }
    std::cout << name << ": " << metrics.size() << " invariant Einstein metrics (x1=1)\n";
    for (const auto& m : metrics) {
        std::cout << "  (";
        for (size_t i = 0; i < m.x.size(); ++i)
            std::cout << (i ? ", " : "") << hrf::format_sig(m.x[i], 6);
        std::cout << ")  lambda=" << hrf::format_sig(m.lambda, 6) << "\n";
    }
    return 0;
}

int cmd_flow(const std::string& name, const std::string& x0_csv, double t0, double t1,
             double tol, double floor, long max_steps, const std::string& out_path) {
    const auto& space = hrf::get_space(name);
    const std::vector<double> x0 = parse_vector(x0_csv);
    hrf::IntegratorOptions opts;
    opts.tol = tol;
    opts.floor = floor;
    opts.max_steps = max_steps;
    const auto traj = hrf::integrate_flow(space, x0, t1 - t0, opts);
    write_output(out_path, hrf::trajectory_csv(space, traj, t0));
    if (traj.terminated_by == hrf::TerminationReason::step_failure) {
        std::cerr << "integrator failed before reaching the end of the time span\n";
        return 1;
    }
    return 0;
}

int cmd_ancient(const std::string& name, int index, double t0, double t1, int steps,
                const std::string& out_path) {
    const auto& entry = hrf::catalog_entry(name);
    const auto points = hrf::find_fixed_points_at_infinity(entry.space);
    if (index < 1 || index > static_cast<int>(points.size()))
        throw std::invalid_argument("index must be in 1.." + std::to_string(points.size()));
    const auto sol = hrf::ancient_solution(entry.space, points[index - 1]);
    if (t0 >= sol.extinction_time)
        throw std::domain_error("t0 is past the extinction time T=" +
                                hrf::format_sig(sol.extinction_time, 12));
    write_output(out_path, hrf::ancient_csv(sol, t0, t1, steps));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"homogeneous Ricci flow on flag spaces with b2 = 1"};
    app.require_subcommand(1);

    std::string format = "text", space, x0_csv, out_path;
    double t0 = 0.0, t1 = 1.0, tol = 1e-10, floor = 1e-8;
    long max_steps = 2000000;
    int index = 1, steps = 100;

    auto* sc_catalog = app.add_subcommand("catalog", "list the embedded flag spaces");
    sc_catalog->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    app.add_subcommand("table1", "recompute the classification table and compare");

    auto* sc_fp = app.add_subcommand("fixed-points", "fixed points at infinity for one space");
    sc_fp->add_option("--space", space)->required();
    sc_fp->add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv"}));

    auto* sc_einstein = app.add_subcommand("einstein", "invariant Einstein metrics of one space");
    sc_einstein->add_option("--space", space)->required();
    sc_einstein->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* sc_flow = app.add_subcommand("flow", "integrate the flow, CSV output");
    sc_flow->add_option("--space", space)->required();
    sc_flow->add_option("--x0", x0_csv, "initial metric, comma separated")->required();
    sc_flow->add_option("--t0", t0);
    sc_flow->add_option("--t1", t1)->required();
    sc_flow->add_option("--tol", tol);
    sc_flow->add_option("--floor", floor);
    sc_flow->add_option("--max-steps", max_steps);
    sc_flow->add_option("--out", out_path);

    auto* sc_ancient = app.add_subcommand("ancient", "ancient-solution curves, CSV output");
    sc_ancient->add_option("--space", space)->required();
    sc_ancient->add_option("--index", index, "fixed point index, 1-based")->required();
    sc_ancient->add_option("--t0", t0)->required();
    sc_ancient->add_option("--t1", t1)->required();
    sc_ancient->add_option("--steps", steps);
    sc_ancient->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sc_catalog->parsed()) return cmd_catalog(format);
        if (app.get_subcommand("table1")->parsed()) return cmd_table1();
        if (sc_fp->parsed()) return cmd_fixed_points(space, format);
        if (sc_einstein->parsed()) return cmd_einstein(space, format);
        if (sc_flow->parsed()) return cmd_flow(space, x0_csv, t0, t1, tol, floor, max_steps,
                                               out_path);
        if (sc_ancient->parsed()) return cmd_ancient(space, index, t0, t1, steps, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
