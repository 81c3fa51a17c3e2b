// Copyright 2026 The qaekit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QAEKIT_EXPERIMENT_HPP
#define QAEKIT_EXPERIMENT_HPP

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qaekit/error.hpp"

namespace qaekit {

// Experiment runner: JSON configs in, deterministic column-oriented text
// records out. One record per run; re-running an identical (config, seed)
// pair reproduces every numeric column byte for byte.

inline constexpr int kRecordSchemaVersion = 1;

struct ExperimentRecord {
    int schema_version = kRecordSchemaVersion;
    std::string protocol;
    std::string build_id;
    std::string config_echo; // canonical single-line JSON
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> summary;
};

/// Parse and structurally validate a config; errors carry the field path.
nlohmann::json load_config_file(const std::string& path);
nlohmann::json parse_config(const std::string& text);

/// Apply a "dotted.path=value" override; the value is parsed as JSON when
/// possible and kept as a string otherwise.
void apply_override(nlohmann::json& config, const std::string& assignment);

/// Swap the scaled-down defaults of a fidelity config for the full-size
/// reference setup (8 qubits, 200 iterations).
void apply_paper_scale(nlohmann::json& config);

/// Validate and execute the configured protocol.
ExperimentRecord run_experiment(const nlohmann::json& config);

/// run_experiment + atomic write (temp file + rename). On protocol failure
/// the partial record is written with an error summary and the exception is
/// rethrown so callers can exit nonzero.
ExperimentRecord run_experiment_to_file(const nlohmann::json& config,
                                        const std::string& out_path);

/// One run per axis value (axis is a dotted path to a scalar config field),
/// up to `workers` in parallel, plus an index file listing every record.
/// Returns the written record paths in axis order.
std::vector<std::string> sweep_experiment(const nlohmann::json& base_config,
                                          const std::string& axis,
                                          const std::vector<std::string>& values,
                                          const std::string& out_path,
                                          int workers);

void write_record(const ExperimentRecord& record, const std::string& path);
ExperimentRecord read_record(const std::string& path);

const char* build_id();

} // namespace qaekit

#endif
