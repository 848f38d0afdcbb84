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

#ifndef FOGREP_CORE_HARNESS_HPP
#define FOGREP_CORE_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/metrics.hpp"
#include "core/placement.hpp"
#include "core/workload.hpp"

namespace fogrep {

struct SweepSize {
    std::uint32_t n_files = 0;
    std::uint32_t n_devices = 0;
};

/// Experiment sweep: sizes x repeats, all three policies on identical
/// scenarios, availability under seeded failure masks.
struct SweepPlan {
    std::vector<SweepSize> sizes;
    std::uint32_t repeats = 10;
    ExperimentConfig base_config;
    double failure_fraction = 0.10;
    std::uint32_t failure_mask_count = 10;
    std::uint64_t master_seed = 1;

    /// The reference 22-size plan: 100 files with 100..300 devices in
    /// steps of 20, then 200 devices with 100..200 files in steps of 10.
    static SweepPlan default_plan(const ExperimentConfig& base);
};

struct ResultRow {
    Policy policy = Policy::ReplicaAware;
    std::uint32_t n_files = 0;
    std::uint32_t n_devices = 0;
    std::uint32_t repeat = 0;
    std::uint64_t seed = 0;
    MetricsReport metrics;
    double storage_ratio = 0.0;
    std::uint32_t overflow_count = 0;
};

struct CellError {
    SweepSize size;
    std::uint32_t repeat = 0;
    std::string message;
};

/// Per-(size, policy) aggregate over repeats.
struct CellSummary {
    SweepSize size;
    Policy policy = Policy::ReplicaAware;
    std::uint32_t repeats = 0;
    MetricsReport mean;
    MetricsReport stdev;
    double storage_ratio_mean = 0.0;
    double storage_ratio_stdev = 0.0;
};

/// One improvement-table row: paired fogstore/replica-aware ratios of
/// means, oriented so that a value above 1 favors replica-aware (all
/// compared metrics are lower-is-better). NaN marks an undefined ratio.
struct ImprovementRow {
    SweepSize size;
    double ir_msgs_write = 0.0;
    double ir_msgs_read = 0.0;
    double ir_lat_read = 0.0;
    double ir_lat_write_min = 0.0;
    double ir_lat_write_max = 0.0;
    double storage_ratio = 0.0;
};

struct SweepResult {
    SweepPlan plan;
    std::vector<ResultRow> rows;
    std::vector<CellSummary> summaries;
    std::vector<CellError> errors;
};

SweepResult run_sweep(const SweepPlan& plan);

/// The per-size rows plus the averages row at the back.
std::vector<ImprovementRow> improvement_table(const SweepResult& result);

struct TimingRow {
    std::uint32_t n_devices = 0;
    std::uint32_t repeats = 0;
    double mean_ms = 0.0;
    double stdev_ms = 0.0;
};

/// Wall time of a single-file replica-aware placement per network size
/// (scenario generation excluded from the measurement).
std::vector<TimingRow> time_placement(const std::vector<std::uint32_t>& sizes,
                                      std::uint32_t repeats,
                                      std::uint64_t master_seed);

// CSV renderers; column lists are documented in the README and stable.
std::string results_csv(const SweepResult& result);
std::string improvement_csv(const std::vector<ImprovementRow>& rows);
std::string summary_csv(const SweepResult& result);
std::string timing_csv(const std::vector<TimingRow>& rows);
std::string metrics_csv_row(Policy policy, std::uint32_t n_files,
                            std::uint32_t n_devices, std::uint64_t seed,
                            const MetricsReport& metrics, double storage_ratio,
                            std::uint32_t overflow_count);
std::string metrics_csv_header();

/// Seed for one experiment cell, keyed by the cell's size values and
/// repeat index.
std::uint64_t cell_seed(std::uint64_t master, SweepSize size,
                        std::uint32_t repeat);

}  // namespace fogrep

#endif
