#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hrf/ancient.hpp"
#include "hrf/catalog.hpp"
#include "hrf/flow.hpp"
#include "hrf/poincare.hpp"

namespace hrf {

/// Fixed-width significant-digit formatting; reports use 6 digits, data
/// files 12, so repeated runs are byte-identical.
inline std::string format_sig(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
    std::string s(buf);
    if (s == "-0") s = "0";
    return s;
}

// ---------------------------------------------------------- fixed points

inline nlohmann::json fixed_point_report(const FlagSpace& space,
                                         const std::vector<FixedPointAtInfinity>& points) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& fp : points) {
        nlohmann::json evs = nlohmann::json::array();
        for (const auto& ev : fp.eigenvalues)
            evs.push_back({{"re", ev.real()}, {"im", ev.imag()}});
        pts.push_back({{"chart", fp.chart_coords},
                       {"representative", fp.representative},
                       {"eigenvalues", evs},
                       {"d_stb", fp.d_stb},
                       {"d_unstb", fp.d_unstb},
                       {"lambda", fp.lambda},
                       {"is_kahler_einstein", is_kahler_einstein(fp)}});
    }
    return {{"space", space.name()},
            {"N", static_cast<int>(points.size())},
            {"points", pts}};
}

// ---------------------------------------------------------------- table 1

struct Table1Row {
    std::string name;
    int r = 0;
    int expected_n = 0;
    int computed_n = 0;
    std::vector<std::pair<int, int>> expected;  // (d_stb, d_unstb) per j
    std::vector<std::pair<int, int>> computed;
    bool matches = false;
};

/// Recomputes the classification at infinity for one catalog entry and
/// compares it with the embedded expectation.
inline Table1Row table1_row(const CatalogEntry& entry, const SolverOptions& opts = {}) {
    Table1Row row;
    row.name = entry.space.name();
    row.r = entry.space.rank();
    row.expected_n = entry.expected_fixed_points;
    row.expected = entry.expected_stability;
    const auto points = find_fixed_points_at_infinity(entry.space, opts);
    row.computed_n = static_cast<int>(points.size());
    for (const auto& fp : points) row.computed.emplace_back(fp.d_stb, fp.d_unstb);
    row.matches = (row.computed_n == row.expected_n) && (row.computed == row.expected);
    return row;
}

inline std::string render_table1(const std::vector<Table1Row>& rows) {
    std::ostringstream os;
    os << "space                        r   N   (d_stb, d_unstb) per fixed point\n";
    os << "--------------------------------------------------------------------\n";
    for (const auto& row : rows) {
        os << row.name;
        for (size_t i = row.name.size(); i < 28; ++i) os << ' ';
        os << ' ' << row.r << "   " << row.computed_n << "   ";
        for (size_t j = 0; j < row.computed.size(); ++j) {
            if (j) os << "  ";
            os << '(' << row.computed[j].first << ',' << row.computed[j].second << ')';
        }
        if (!row.matches) {
            os << "   MISMATCH, expected N=" << row.expected_n << " ";
            for (size_t j = 0; j < row.expected.size(); ++j) {
                if (j) os << "  ";
                os << '(' << row.expected[j].first << ',' << row.expected[j].second << ')';
            }
        }
        os << '\n';
    }
    return os.str();
}

// -------------------------------------------------------------- CSV data

inline std::string trajectory_csv(const FlagSpace& space, const Trajectory& traj,
                                  double t_offset = 0.0) {
    std::ostringstream os;
    os << "t";
    for (int i = 1; i <= space.rank(); ++i) os << ",x" << i;
    os << ",scal\n";
    for (size_t s = 0; s < traj.times.size(); ++s) {
        os << format_sig(traj.times[s] + t_offset, 12);
        for (double v : traj.states[s]) os << ',' << format_sig(v, 12);
        os << ','
           << format_sig(scalar_curvature<double>(space,
                                                  std::span<const double>(traj.states[s])),
                         12)
           << '\n';
    }
    const char* reason = traj.terminated_by == TerminationReason::extinction ? "extinction"
                         : traj.terminated_by == TerminationReason::step_failure
                             ? "step_failure"
                             : "t_end_reached";
    os << "# terminated_by=" << reason << '\n';
    return os.str();
}

/// Curve export for an ancient solution on a uniform t-grid clipped to the
/// domain (-inf, T).
inline std::string ancient_csv(const AncientSolution& sol, double t0, double t1, int steps) {
    if (steps < 1) throw std::invalid_argument("ancient_csv: steps must be >= 1");
    const FlagSpace& space = *sol.space;
    std::ostringstream os;
    os << "t";
    for (int i = 1; i <= space.rank(); ++i) os << ",x" << i;
    os << ",scal";
    for (int i = 1; i <= space.rank(); ++i) os << ",ric" << i;
    os << '\n';
    const double margin = 1e-9 * std::max(1.0, std::abs(sol.extinction_time));
    for (int s = 0; s <= steps; ++s) {
        const double t = t0 + (t1 - t0) * s / steps;
        if (!(t < sol.extinction_time - margin)) break;
        os << format_sig(t, 12);
        for (double v : evaluate(sol, t)) os << ',' << format_sig(v, 12);
        os << ',' << format_sig(scal_along(sol, t), 12);
        for (double v : ricci_along(sol, t)) os << ',' << format_sig(v, 12);
        os << '\n';
    }
    return os.str();
}

} // namespace hrf
