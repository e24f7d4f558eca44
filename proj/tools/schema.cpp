/*
 * Copyright 2026 The bureshall Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "schema.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "bureshall/version.hpp"

namespace bureshall::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum class Kind { number, integer, text, boolean };

struct Column {
    const char* name;
    Kind kind;
};

const std::map<std::string, std::vector<Column>>& csv_schemas() {
    static const std::map<std::string, std::vector<Column>> schemas = {
        {schema::kDensityCsv,
         {{"x", Kind::number}, {"density", Kind::number}, {"marginal", Kind::number}, {"weight", Kind::number}}},
        {schema::kEntropyTableCsv,
         {{"n", Kind::integer},
          {"m", Kind::integer},
          {"quantity", Kind::text},
          {"bh_exact", Kind::text},
          {"bh_float", Kind::number},
          {"hs_exact", Kind::text},
          {"hs_float", Kind::number},
          {"difference_exact", Kind::text},
          {"difference_float", Kind::number},
          {"conjecture_match", Kind::boolean}}},
        {schema::kMcHistogramCsv,
         {{"ensemble", Kind::text},
          {"bin", Kind::integer},
          {"lo", Kind::number},
          {"hi", Kind::number},
          {"count", Kind::integer},
          {"mc_density", Kind::number}}},
        {schema::kMcOverlayCsv,
         {{"ensemble", Kind::text},
          {"bin", Kind::integer},
          {"center", Kind::number},
          {"mc_density", Kind::number},
          {"analytic_density", Kind::number},
          {"abs_diff", Kind::number}}},
        {schema::kMcEstimatesCsv,
         {{"quantity", Kind::text},
          {"mc_mean", Kind::number},
          {"std_error", Kind::number},
          {"exact", Kind::text},
          {"exact_value", Kind::number},
          {"z_score", Kind::number},
          {"within_3se", Kind::boolean}}},
    };
    return schemas;
}

bool parses_as(const std::string& cell, Kind kind) {
    switch (kind) {
        case Kind::text:
            return !cell.empty();
        case Kind::boolean:
            return cell == "true" || cell == "false";
        case Kind::integer: {
            if (cell.empty()) return false;
            char* end = nullptr;
            errno = 0;
            (void)std::strtoll(cell.c_str(), &end, 10);
            return errno == 0 && *end == '\0';
        }
        case Kind::number: {
            if (cell.empty()) return false;
            char* end = nullptr;
            (void)std::strtod(cell.c_str(), &end);
            return *end == '\0';
        }
    }
    return false;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& text, std::vector<std::string>& problems) {
    std::vector<std::string> lines;
    if (text.find('\r') != std::string::npos) problems.emplace_back("CR line endings; expected LF");
    if (!text.empty() && text.back() != '\n') problems.emplace_back("last line is not LF-terminated");
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
    return lines;
}

void check_csv(const std::string& text, const std::string& name, CheckResult& r) {
    const auto& columns = csv_schemas().at(name);
    const auto lines = lines_of(text, r.problems);
    if (lines.empty()) {
        r.problems.emplace_back("missing header row");
        return;
    }
    const auto header = split(lines.front());
    std::vector<std::string> expected;
    for (const auto& c : columns) expected.emplace_back(c.name);
    if (header != expected) {
        r.problems.push_back("header '" + lines.front() + "' does not match the schema");
        return;
    }
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split(lines[i]);
        if (cells.size() != columns.size()) {
            r.problems.push_back("row " + std::to_string(i) + ": expected " + std::to_string(columns.size()) +
                                 " fields, found " + std::to_string(cells.size()));
            continue;
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (!parses_as(cells[c], columns[c].kind)) {
                r.problems.push_back("row " + std::to_string(i) + ", column " + columns[c].name + ": bad value '" +
                                     cells[c] + "'");
            }
        }
        if (r.problems.size() > 20) return;
    }
}

void check_samples_csv(const std::string& text, CheckResult& r) {
    const auto lines = lines_of(text, r.problems);
    if (lines.empty()) {
        r.problems.emplace_back("missing header row");
        return;
    }
    const auto header = split(lines.front());
    const std::string prefix = header.empty() ? "" : header.front().substr(0, header.front().find('_'));
    if (prefix != "lambda" && prefix != "mu") {
        r.problems.emplace_back("header must be lambda_1,... or mu_1,...");
        return;
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] != prefix + "_" + std::to_string(i + 1)) {
            r.problems.push_back("header column " + std::to_string(i + 1) + " is '" + header[i] + "'");
            return;
        }
    }
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split(lines[i]);
        bool ok = cells.size() == header.size();
        for (const auto& c : cells) ok = ok && parses_as(c, Kind::number);
        if (!ok) {
            r.problems.push_back("row " + std::to_string(i) + " is malformed");
            if (r.problems.size() > 20) return;
        }
    }
}

void require(const json& j, const char* key, json::value_t type, CheckResult& r) {
    if (!j.is_object() || !j.contains(key)) {
        r.problems.push_back(std::string("missing key '") + key + "'");
        return;
    }
    const auto t = j.at(key).type();
    const bool numeric = type == json::value_t::number_float &&
                         (t == json::value_t::number_integer || t == json::value_t::number_unsigned);
    const bool integral = type == json::value_t::number_integer && t == json::value_t::number_unsigned;
    if (t != type && !numeric && !integral) r.problems.push_back(std::string("key '") + key + "' has the wrong type");
}

void check_json(const std::string& text, const std::string& name, CheckResult& r) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        r.problems.push_back(std::string("invalid JSON: ") + e.what());
        return;
    }
    using T = json::value_t;
    require(j, "schema", T::string, r);
    if (!r.ok()) return;
    if (j.at("schema") != name) {
        r.problems.push_back("declares schema '" + j.at("schema").get<std::string>() + "'");
        return;
    }
    if (name == schema::kDensityJson) {
        require(j, "ensemble", T::string, r);
        require(j, "n", T::number_integer, r);
        require(j, "dirac", T::boolean, r);
        for (const char* k : {"x", "density", "marginal", "weight"}) require(j, k, T::array, r);
        if (r.ok()) {
            const auto size = j.at("x").size();
            for (const char* k : {"density", "marginal", "weight"}) {
                if (j.at(k).size() != size) r.problems.push_back(std::string("array '") + k + "' has the wrong length");
            }
        }
    } else if (name == schema::kEntropyTableJson) {
        require(j, "rows", T::array, r);
        if (!r.ok()) return;
        for (const auto& row : j.at("rows")) {
            for (const auto& c : csv_schemas().at(schema::kEntropyTableCsv)) {
                if (!row.contains(c.name)) r.problems.push_back(std::string("row without '") + c.name + "'");
            }
            if (!r.ok()) return;
        }
    } else if (name == schema::kVerifyJson) {
        require(j, "cells", T::array, r);
        require(j, "all_pass", T::boolean, r);
        if (!r.ok()) return;
        for (const auto& cell : j.at("cells")) {
            for (const char* k : {"n", "m", "xi_residual", "eta_residual", "pass"}) {
                if (!cell.contains(k)) r.problems.push_back(std::string("cell without '") + k + "'");
            }
            if (!r.ok()) return;
        }
    } else if (name == schema::kMcSummaryJson) {
        require(j, "acceptance_rate", T::number_float, r);
        require(j, "snapshots", T::number_integer, r);
        require(j, "sup_norm", T::object, r);
        require(j, "pass", T::boolean, r);
    } else if (name == schema::kManifest) {
        require(j, "command", T::string, r);
        require(j, "params", T::object, r);
        require(j, "outputs", T::array, r);
        require(j, "versions", T::object, r);
        require(j, "timing", T::object, r);
    } else {
        r.problems.push_back("unknown schema '" + name + "'");
    }
}

}  // namespace

namespace schema {

std::vector<std::string> csv_columns(const std::string& name) {
    std::vector<std::string> out;
    for (const auto& c : csv_schemas().at(name)) out.emplace_back(c.name);
    return out;
}

}  // namespace schema

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    out.close();
    if (!out) throw IoError("failed writing " + path.string());
}

void write_manifest(const fs::path& manifest, const std::string& command, const json& params,
                    const std::vector<OutputFile>& outputs, double wall_seconds) {
    json j;
    j["schema"] = schema::kManifest;
    j["command"] = command;
    j["params"] = params;
    json outs = json::array();
    const fs::path base = manifest.parent_path();
    for (const auto& o : outputs) {
        const fs::path rel = base.empty() ? o.path : o.path.lexically_relative(base);
        outs.push_back({{"path", rel.generic_string()}, {"schema", o.schema}});
    }
    j["outputs"] = outs;
    j["versions"] = {{"bureshall", kVersion}, {"format", schema::kFormatVersion}};
    j["timing"] = {{"wall_seconds", wall_seconds}};
    write_text(manifest, j.dump(2) + "\n");
}

CheckResult check_file(const fs::path& path, const std::string& name) {
    CheckResult r{path, name, {}};
    const std::string text = read_file(path);
    if (name == schema::kMcSamplesCsv) {
        check_samples_csv(text, r);
    } else if (csv_schemas().count(name) != 0) {
        check_csv(text, name, r);
    } else {
        check_json(text, name, r);
    }
    return r;
}

std::vector<CheckResult> check_manifest(const fs::path& manifest) {
    std::vector<CheckResult> out{check_file(manifest, schema::kManifest)};
    if (!out.front().ok()) return out;
    const json j = json::parse(read_file(manifest));
    const fs::path base = manifest.parent_path();
    for (const auto& o : j.at("outputs")) {
        if (!o.contains("path") || !o.contains("schema")) {
            out.front().problems.emplace_back("output entry without path or schema");
            continue;
        }
        const fs::path p = base / o.at("path").get<std::string>();
        if (!fs::exists(p)) {
            out.push_back({p, o.at("schema").get<std::string>(), {"listed output does not exist"}});
            continue;
        }
        out.push_back(check_file(p, o.at("schema").get<std::string>()));
    }
    return out;
}

std::string declared_schema(const fs::path& path) {
    const fs::path candidates[] = {fs::path(path.string() + ".manifest.json"), path.parent_path() / "manifest.json"};
    for (const auto& m : candidates) {
        if (!fs::exists(m)) continue;
        json j;
        try {
            j = json::parse(read_file(m));
        } catch (const json::parse_error&) {
            continue;
        }
        if (!j.contains("outputs")) continue;
        for (const auto& o : j.at("outputs")) {
            if (o.contains("path") && o.contains("schema") &&
                fs::path(o.at("path").get<std::string>()).filename() == path.filename()) {
                return o.at("schema").get<std::string>();
            }
        }
    }
    return {};
}

}  // namespace bureshall::cli
