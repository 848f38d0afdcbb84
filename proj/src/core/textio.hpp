/*
 * Copyright 2026 The fogrep authors
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

#ifndef FOGREP_CORE_TEXTIO_HPP
#define FOGREP_CORE_TEXTIO_HPP

#include <string>

#include "core/metrics.hpp"
#include "core/placement.hpp"
#include "core/workload.hpp"

namespace fogrep {

// Line-oriented text formats. Floating-point values are written in the
// shortest representation that parses back to the same bits, so every
// format round-trips exactly.

std::string format_network(const FogNetwork& network);
FogNetwork parse_network(const std::string& text);

std::string format_scenario(const Scenario& scenario);
Scenario parse_scenario(const std::string& text);

std::string format_placement(const PlacementResult& placement);
/// Parsed matrix plus the recorded policy.
std::pair<PlacementMatrix, Policy> parse_placement(const std::string& text);

std::string format_trace(const PlacementTrace& trace);

std::string format_config(const ExperimentConfig& config);
ExperimentConfig parse_config(const std::string& text);
/// Applies one `key=value` assignment (the config-file syntax).
void config_set(ExperimentConfig& config, const std::string& key,
                const std::string& value);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Shortest round-trip formatting for doubles ("inf" for the unbounded
/// capacity sentinel is handled by the callers).
std::string format_double(double value);

}  // namespace fogrep

#endif
