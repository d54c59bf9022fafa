#pragma once

// JSON and CSV renderings of lab results.

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lzero/lab.hpp"

namespace lzero::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "lzero";
inline constexpr const char* kVersion = "0.1.0";

inline Json to_json(const CharKey& key) { return Json{{"f", key.modulus}, {"chi", key.exponents}}; }

inline Json to_json(const CycloElt& z) {
    Json coords = Json::array();
    for (const auto& c : z.coords()) coords.push_back(to_fraction_string(c));
    return Json{{"k", z.order()}, {"coords", coords}, {"text", z.to_string()}};
}

inline Json to_json(const TowerDescriptor& t) {
    return Json{{"p", t.p}, {"k", t.k}, {"precision", t.precision}, {"factor", t.factor}};
}

inline Json to_json(const VerdictRecord& r) {
    Json j{{"character", to_json(r.character)},
           {"order", r.order},
           {"p", r.p},
           {"tower", to_json(r.tower)},
           {"valuation", r.valuation.to_string()},
           {"non_integral", r.non_integral()},
           {"global_integral", r.global_integral},
           {"omega_inverse", r.omega_inverse},
           {"prime_power_conductor", r.prime_power_conductor},
           {"classification_consistent", r.classification_consistent}};
    j["vanishes_mod_p"] = r.vanishes_mod_p ? Json(*r.vanishes_mod_p) : Json(nullptr);
    j["notes"] = r.notes;
    return j;
}

/// A table: column names plus rows of already-rendered cells.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

inline std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string to_csv(const Table& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_cell(t.columns[i]);
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
        os << '\n';
    }
    return os.str();
}

/// Flattens a list of JSON objects: nested values become their compact dump.
inline Table flatten(const Json& records) {
    Table t;
    for (const auto& rec : records) {
        if (t.columns.empty())
            for (const auto& [key, _] : rec.items()) t.columns.push_back(key);
        std::vector<std::string> row;
        for (const auto& col : t.columns) {
            const auto it = rec.find(col);
            if (it == rec.end() || it->is_null()) row.emplace_back();
            else if (it->is_string()) row.push_back(it->get<std::string>());
            else row.push_back(it->dump());
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

} // namespace lzero::report
