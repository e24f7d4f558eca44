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


/**
 * @brief Output schemas, run manifests and the validation behind schema-check.
 */

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace bureshall::cli {

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace schema {

inline constexpr int kFormatVersion = 1;

inline constexpr const char* kManifest = "bureshall.manifest.json/1";
inline constexpr const char* kDensityCsv = "bureshall.density.csv/1";
inline constexpr const char* kDensityJson = "bureshall.density.json/1";
inline constexpr const char* kEntropyTableCsv = "bureshall.entropy_table.csv/1";
inline constexpr const char* kEntropyTableJson = "bureshall.entropy_table.json/1";
inline constexpr const char* kVerifyJson = "bureshall.verify.json/1";
inline constexpr const char* kMcHistogramCsv = "bureshall.mc.histogram.csv/1";
inline constexpr const char* kMcOverlayCsv = "bureshall.mc.overlay.csv/1";
inline constexpr const char* kMcEstimatesCsv = "bureshall.mc.estimates.csv/1";
inline constexpr const char* kMcSummaryJson = "bureshall.mc.summary.json/1";
inline constexpr const char* kMcSamplesCsv = "bureshall.mc.samples.csv/1";

/// Header row of a fixed-column CSV schema.
std::vector<std::string> csv_columns(const std::string& schema);

}  // namespace schema

struct OutputFile {
    std::filesystem::path path;
    std::string schema;
};

/// Manifest written next to the outputs. Output paths are stored relative to
/// the manifest's directory.
void write_manifest(const std::filesystem::path& manifest, const std::string& command, const nlohmann::json& params,
                    const std::vector<OutputFile>& outputs, double wall_seconds);

/// Writes text, throwing IoError on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

struct CheckResult {
    std::filesystem::path path;
    std::string schema;
    std::vector<std::string> problems;

    bool ok() const { return problems.empty(); }
};

/// Validates one file against a named schema. Throws IoError if unreadable.
CheckResult check_file(const std::filesystem::path& path, const std::string& schema);

/// Validates a manifest and every output it lists.
std::vector<CheckResult> check_manifest(const std::filesystem::path& manifest);

/// Schema of a data file as declared by the manifest next to it
/// (<file>.manifest.json or manifest.json in the same directory); empty if none.
std::string declared_schema(const std::filesystem::path& path);

}  // namespace bureshall::cli
