#pragma once

#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hrf/flag_space.hpp"

namespace hrf {

/// A catalog record: the space itself plus the expected picture at infinity
/// (fixed-point count, per-point stable/unstable dimensions, and reference
/// chart coordinates used to order solver output). Reference data is absent
/// for user-supplied catalogs.
struct CatalogEntry {
    FlagSpace space;
    int expected_fixed_points = 0;  // 0 = unknown
    std::vector<std::pair<int, int>> expected_stability;     // (d_stb, d_unstb) per j
    std::vector<std::vector<double>> reference_chart_points; // per j, may be empty
};

namespace detail {

inline std::vector<CatalogEntry> builtin_catalog() {
    std::vector<CatalogEntry> cat;
    auto add = [&cat](FlagSpace space, int n, std::vector<std::pair<int, int>> stab,
                      std::vector<std::vector<double>> refs) {
        cat.push_back({std::move(space), n, std::move(stab), std::move(refs)});
    };
    auto named = [](const char* name, FlagSpace s) {
        return FlagSpace(name, s.dims(), s.constants());
    };

    // --- r = 2 ---------------------------------------------------------
    add(named("G2/U(2)#r2", make_r2_space(8, 2)), 2,
        {{1, 1}, {0, 2}}, {{2.0}, {2.0 / 3.0}});
    add(named("F4/Sp(3)xU(1)#r2", make_r2_space(28, 2)), 2,
        {{1, 1}, {0, 2}}, {{2.0}, {0.25}});

    // --- r = 3 ---------------------------------------------------------
    const std::vector<std::pair<int, int>> stab3 = {{2, 1}, {1, 2}, {1, 2}};
    add(named("E8/E6xSU(2)xU(1)", make_r3_space(108, 54, 4)), 3, stab3,
        {{2, 3}, {0.914286, 1.54198}, {1.0049, 0.129681}});
    add(named("E8/SU(8)xU(1)", make_r3_space(112, 56, 16)), 3, stab3,
        {{2, 3}, {0.717586, 1.25432}, {1.06853, 0.473177}});
    add(named("E7/SU(5)xSU(3)xU(1)", make_r3_space(60, 30, 8)), 3, stab3,
        {{2, 3}, {0.733552, 1.27681}, {1.06029, 0.443559}});
    add(named("E7/SU(6)xSU(2)xU(1)", make_r3_space(60, 30, 4)), 3, stab3,
        {{2, 3}, {0.85368, 1.45259}, {1.01573, 0.229231}});
    add(named("E6/SU(3)xSU(3)xSU(2)xU(1)", make_r3_space(36, 18, 4)), 3, stab3,
        {{2, 3}, {0.771752, 1.33186}, {1.04268, 0.373467}});
    add(named("F4/SU(3)xSU(2)xU(1)#r3", make_r3_space(24, 12, 4)), 3, stab3,
        {{2, 3}, {0.678535, 1.20122}, {1.09057, 0.546045}});
    add(named("G2/U(2)#r3", make_r3_space(4, 2, 4)), 3, stab3,
        {{2, 3}, {1.67467, 2.05238}, {0.186894, 0.981478}});

    // --- r = 4 ---------------------------------------------------------
    const std::vector<std::pair<int, int>> stab4 = {{3, 1}, {2, 2}, {2, 2}};
    add(FlagSpace("F4/SU(3)xSU(2)xU(1)#r4", {12, 18, 4, 6},
                  {{2, 2, 4, Rational(2)}, {1, 1, 2, Rational(2)},
                   {1, 2, 3, Rational(1)}, {1, 3, 4, Rational(2, 3)}}),
        3, stab4,
        {{2, 3, 4},
         {1.2761408491, 1.9578566070, 2.3178797527},
         {0.9704881691, 0.2291711712, 1.0096951346}});
    add(FlagSpace("E7/SU(4)xSU(3)xSU(2)xU(1)", {48, 36, 16, 6},
                  {{2, 2, 4, Rational(2)}, {1, 1, 2, Rational(8)},
                   {1, 2, 3, Rational(4)}, {1, 3, 4, Rational(4, 3)}}),
        3, stab4,
        {{2, 3, 4},
         {0.8233509968, 1.2942274030, 1.3498864270},
         {0.9912793223, 0.5783067262, 1.1312694438}});
    add(FlagSpace("E8/SO(10)xSU(3)xU(1)", {96, 60, 32, 6},
                  {{2, 2, 4, Rational(2)}, {1, 1, 2, Rational(16)},
                   {1, 2, 3, Rational(8)}, {1, 3, 4, Rational(8, 5)}}),
        5, {{3, 1}, {2, 2}, {2, 2}, {2, 2}, {1, 3}},
        {{2, 3, 4},
         {1.09705, 0.770347, 1.29696},
         {1.15607, 1.01783, 0.214618},
         {0.649612, 1.10943, 1.06103},
         {0.763357, 1.00902, 0.191009}});
    add(FlagSpace("E8/SU(7)xSU(2)xU(1)", {84, 70, 28, 14},
                  {{2, 2, 4, Rational(14, 3)}, {1, 1, 2, Rational(14)},
                   {1, 2, 3, Rational(7)}, {1, 3, 4, Rational(14, 5)}}),
        3, stab4,
        {{2, 3, 4},
         {0.9133298708, 1.4136824608, 1.5196776387},
         {0.9663105821, 0.4898318744, 1.0809119897}});

    // --- r = 5 ---------------------------------------------------------
    add(FlagSpace("E8/U(1)xSU(4)xSU(5)", {80, 60, 40, 20, 8},
                  {{1, 1, 2, Rational(12)}, {1, 2, 3, Rational(8)},
                   {1, 3, 4, Rational(4)}, {1, 4, 5, Rational(4, 3)},
                   {2, 2, 4, Rational(4)}, {2, 3, 5, Rational(2)}}),
        6, {{4, 1}, {3, 2}, {3, 2}, {3, 2}, {2, 3}, {3, 2}},
        {{2, 3, 4, 5},
         {0.599785, 1.08371, 0.901823, 1.22291},
         {1.02137, 0.546007, 1.05352, 1.10879},
         {1.08294, 1.04088, 0.532615, 1.10351},
         {0.720713, 1.02546, 0.475234, 1.07095},
         {1.03732, 1.04718, 1.03082, 0.29862}});

    // --- r = 6 ---------------------------------------------------------
    add(FlagSpace("E8/U(1)xSU(2)xSU(3)xSU(5)", {60, 60, 40, 30, 12, 10},
                  {{1, 1, 2, Rational(8)}, {1, 2, 3, Rational(6)},
                   {1, 3, 4, Rational(4)}, {1, 4, 5, Rational(2)},
                   {1, 5, 6, Rational(1)}, {2, 2, 4, Rational(6)},
                   {2, 3, 5, Rational(2)}, {3, 3, 6, Rational(2)},
                   {2, 4, 6, Rational(2)}}),
        5, {{5, 1}, {4, 2}, {4, 2}, {3, 3}, {4, 2}},
        {{2, 3, 4, 5, 6},
         {0.823084, 1.1467, 1.17377, 1.42664, 1.46519},
         {0.986536, 0.636844, 1.06853, 1.13323, 0.921127},
         {0.90422, 0.778283, 0.927483, 1.03408, 0.359949},
         {0.954875, 0.965321, 1.00534, 0.290091, 1.01965}});

    return cat;
}

} // namespace detail

inline constexpr int kCatalogSchemaVersion = 1;

/// Versioned plain-text dump: one record per space with name, r, dims and
/// the exact structure constants as num/den pairs.
inline nlohmann::json catalog_to_json(const std::vector<CatalogEntry>& entries) {
    nlohmann::json spaces = nlohmann::json::array();
    for (const auto& entry : entries) {
        nlohmann::json constants = nlohmann::json::array();
        for (const auto& c : entry.space.constants())
            constants.push_back({{"i", c.i},
                                 {"j", c.j},
                                 {"k", c.k},
                                 {"num", c.value.num()},
                                 {"den", c.value.den()}});
        spaces.push_back({{"name", entry.space.name()},
                          {"r", entry.space.rank()},
                          {"dims", entry.space.dims()},
                          {"constants", constants}});
    }
    return {{"version", kCatalogSchemaVersion}, {"spaces", spaces}};
}

inline std::vector<CatalogEntry> catalog_from_json(const nlohmann::json& doc) {
    if (doc.at("version").get<int>() != kCatalogSchemaVersion)
        throw std::invalid_argument("catalog: unsupported schema version");
    std::vector<CatalogEntry> entries;
    for (const auto& js : doc.at("spaces")) {
        std::vector<int> dims = js.at("dims").get<std::vector<int>>();
        if (js.contains("r") && js.at("r").get<int>() != static_cast<int>(dims.size()))
            throw std::invalid_argument("catalog: r does not match dims length");
        std::vector<StructureConstant> constants;
        for (const auto& jc : js.at("constants"))
            constants.push_back({jc.at("i").get<int>(), jc.at("j").get<int>(),
                                 jc.at("k").get<int>(),
                                 Rational(jc.at("num").get<std::int64_t>(),
                                          jc.at("den").get<std::int64_t>())});
        entries.push_back({FlagSpace(js.at("name").get<std::string>(), std::move(dims),
                                     std::move(constants)),
                           0,
                           {},
                           {}});
    }
    return entries;
}

namespace detail {

inline std::vector<CatalogEntry> load_catalog_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open catalog file " + path);
    nlohmann::json doc;
    in >> doc;
    return catalog_from_json(doc);
}

} // namespace detail

/// The active catalog. HRF_CATALOG_PATH overrides the embedded one with a
/// user file in the documented JSON schema (no reference data in that case).
inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> cat = [] {
        if (const char* path = std::getenv("HRF_CATALOG_PATH"))
            return detail::load_catalog_file(path);
        return detail::builtin_catalog();
    }();
    return cat;
}

inline const CatalogEntry* find_entry(const std::string& name) {
    for (const auto& entry : catalog())
        if (entry.space.name() == name) return &entry;
    return nullptr;
}

inline const CatalogEntry& catalog_entry(const std::string& name) {
    if (const CatalogEntry* e = find_entry(name)) return *e;
    std::string msg = "unknown space '" + name + "'; available:";
    for (const auto& entry : catalog()) msg += "\n  " + entry.space.name();
    throw std::invalid_argument(msg);
}

inline const FlagSpace& get_space(const std::string& name) { return catalog_entry(name).space; }

} // namespace hrf
