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

#ifndef FOGREP_CORE_METRICS_HPP
#define FOGREP_CORE_METRICS_HPP

#include <cstdint>
#include <vector>

#include "core/placement.hpp"
#include "core/workload.hpp"

namespace fogrep {

/// The seven objective values for one placement on one network, plus the
/// rate-weighted message variants and exclusion bookkeeping for failure
/// runs.
struct MetricsReport {
    double avail_read = 1.0;
    double avail_write = 1.0;
    double lat_read_ms = 0.0;
    double lat_write_min_ms = 0.0;
    double lat_write_max_ms = 0.0;
    std::uint64_t msgs_write = 0;
    std::uint64_t msgs_read = 0;

    double msgs_write_rate_weighted = 0.0;
    double msgs_read_rate_weighted = 0.0;
    double lat_read_total_ms = 0.0;
    std::uint32_t lat_read_excluded = 0;
    std::uint32_t lat_write_excluded = 0;  // excluded (file, sensor) pairs
};

/// Devices marked down for one availability evaluation.
struct FailureMask {
    std::vector<DeviceId> down_devices;
    double fraction = 0.0;
    std::uint64_t seed = 0;
};

/// Uniformly samples floor(fraction * n_non_cloud) devices and marks them
/// down; the cloud never fails. Returns the degraded network.
FogNetwork inject_failures(const FogNetwork& network, double fraction,
                           std::uint64_t seed);

/// The sampled mask itself (for reporting / re-use).
FailureMask sample_failure_mask(const FogNetwork& network, double fraction,
                                std::uint64_t seed);

/// Fraction of files whose cloud consumer reaches at least one replica in
/// the up subgraph.
double availability_read(const Scenario& scenario,
                         const PlacementMatrix& placement,
                         const FogNetwork& network);

/// Fraction of files for which every sensor gateway reaches at least one
/// replica; one cut-off sensor makes the whole file unwritable.
double availability_write(const Scenario& scenario,
                          const PlacementMatrix& placement,
                          const FogNetwork& network);

struct LatencyRead {
    double mean_ms = 0.0;
    double total_ms = 0.0;
    std::uint32_t excluded_files = 0;
};

/// Mean over files of the cheapest cloud-to-replica latency path at the
/// file's read packet size. Files with no reachable replica are dropped
/// from the mean and counted.
LatencyRead latency_read(const Scenario& scenario,
                         const PlacementMatrix& placement,
                         const FogNetwork& network);

struct LatencyWriteExtrema {
    double min_ms = 0.0;
    double max_ms = 0.0;
    std::uint32_t excluded_pairs = 0;
};

/// Over all (file, sensor) pairs: the averages of the farthest-replica
/// and nearest-replica shortest-latency paths at the write packet size.
/// The denominator is the total sensor count across files.
LatencyWriteExtrema latency_write_extrema(const Scenario& scenario,
                                          const PlacementMatrix& placement,
                                          const FogNetwork& network);

/// Total hop messages to update every replica from every sensor.
std::uint64_t messages_write(const Scenario& scenario,
                             const PlacementMatrix& placement,
                             const FogNetwork& network);

/// Total hop messages for the cloud to read its nearest replica per file.
std::uint64_t messages_read(const Scenario& scenario,
                            const PlacementMatrix& placement,
                            const FogNetwork& network);

/// Latency and message metrics on the healthy network; availability
/// averaged over the failure masks (1.0 when no masks are given).
MetricsReport evaluate_all(const Scenario& scenario,
                           const PlacementMatrix& placement,
                           const FogNetwork& healthy_network,
                           const std::vector<FailureMask>& failure_masks);

}  // namespace fogrep

#endif
