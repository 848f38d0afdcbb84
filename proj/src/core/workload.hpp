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

#ifndef FOGREP_CORE_WORKLOAD_HPP
#define FOGREP_CORE_WORKLOAD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "core/network.hpp"

namespace fogrep {

/// One file of the logical layer: its storage demand, aggregate
/// producer/consumer characteristics and the gateways hosting its sensors.
struct FileSpec {
    std::uint32_t file_id = 0;
    StorageUnits storage_req = 1;
    double write_rate_per_ms = 0.0;
    double write_packet_bytes = 1.0;
    double read_rate_per_ms = 0.0;
    double read_packet_bytes = 1.0;
    std::vector<DeviceId> sensor_gateways;  // sorted, one entry per sensor
    std::uint32_t replication_factor = 3;
};

/// The single reader of every file; always the cloud device.
struct DataConsumer {
    DeviceId consumer_device = 0;
};

struct Scenario {
    FogNetwork network;
    std::vector<FileSpec> files;
    DataConsumer consumer;
    std::uint64_t rng_seed = 0;
};

struct RealRange {
    double min = 0.0;
    double max = 0.0;
};

struct IntRange {
    std::int64_t min = 0;
    std::int64_t max = 0;
};

/// Experiment characterization; defaults follow the reference
/// configuration (see README for the full key list).
struct ExperimentConfig {
    std::uint32_t n_devices = 200;
    std::uint32_t n_files = 100;

    RealRange propagation_ms{1.0, 5.0};               // netPrp
    RealRange bandwidth_bytes_per_ms{50000.0, 75000.0};  // netBdw
    IntRange device_capacity{10, 15};                 // datCap
    IntRange file_storage{1, 6};                      // datReq
    RealRange read_packet_bytes{1500000.0, 4500000.0};
    RealRange write_packet_bytes{1500000.0, 4500000.0};
    RealRange write_rate_per_ms{1.0 / 1000.0, 1.0 / 200.0};
    RealRange read_rate_per_ms{1.0 / 6000.0, 1.0 / 1200.0};

    double gateway_fraction = 0.10;       // gtwPercentage
    double sensor_popularity_max = 0.15;  // snsPopularity
    std::uint32_t replication_factor = 3;

    std::uint32_t ba_attach = 2;
    std::uint32_t cloud_uplinks = 3;

    std::uint32_t repeats = 10;
    double failure_fraction = 0.10;
    std::uint32_t failure_masks = 10;
    std::uint64_t rng_seed = 1;

    void validate() const;
};

/// Builds a fully attributed scenario: scale-free fog topology, gateway
/// and cloud selection by whole-graph betweenness, uniformly drawn link,
/// device and file attributes, and per-file sensor attachment with a
/// popularity parameter drawn in (0, sensor_popularity_max] (a file that
/// draws zero sensors is assigned one uniformly chosen gateway).
/// Pure function of (config, seed).
Scenario generate_scenario(const ExperimentConfig& config, std::uint64_t seed);

/// Total replica storage demand over total fog storage capacity; the
/// cloud is excluded from the denominator.
double storage_usage_ratio(const Scenario& scenario);

}  // namespace fogrep

#endif
