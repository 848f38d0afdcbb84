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

#include "core/workload.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "core/graph.hpp"
#include "core/rng.hpp"

namespace fogrep {

namespace {

void check_range(const RealRange& r, const char* name) {
    if (!(r.min <= r.max)) {
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("{}: min {} > max {}", name, r.min, r.max));
    }
}

void check_range(const IntRange& r, const char* name) {
    if (r.min > r.max) {
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("{}: min {} > max {}", name, r.min, r.max));
    }
}

}  // namespace

void ExperimentConfig::validate() const {
    if (n_devices < 2) {
        throw Error(ErrorCode::InvalidArgument, "need at least 2 devices");
    }
    if (n_files < 1) {
        throw Error(ErrorCode::InvalidArgument, "need at least 1 file");
    }
    if (ba_attach < 1 || ba_attach >= n_devices) {
        throw Error(ErrorCode::InvalidArgument,
                    "ba_attach must satisfy 1 <= m < devices");
    }
    check_range(propagation_ms, "netPrp");
    check_range(bandwidth_bytes_per_ms, "netBdw");
    check_range(device_capacity, "datCap");
    check_range(file_storage, "datReq");
    check_range(read_packet_bytes, "readPacketSize");
    check_range(write_packet_bytes, "writePacketSize");
    check_range(write_rate_per_ms, "writeRate");
    check_range(read_rate_per_ms, "readRate");
    if (!(propagation_ms.min > 0.0) || !(bandwidth_bytes_per_ms.min > 0.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    "link attribute ranges must be positive");
    }
    if (file_storage.min < 1) {
        throw Error(ErrorCode::InvalidArgument, "file storage must be >= 1");
    }
    if (!(gateway_fraction > 0.0 && gateway_fraction < 1.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    "gateway fraction must lie in (0, 1)");
    }
    if (static_cast<std::size_t>(gateway_fraction *
                                 static_cast<double>(n_devices)) < 1) {
        throw Error(ErrorCode::InvalidArgument,
                    "gateway fraction yields zero gateways at this size");
    }
    if (!(sensor_popularity_max > 0.0 && sensor_popularity_max <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    "sensor popularity must lie in (0, 1]");
    }
    if (replication_factor != 3) {
        throw Error(ErrorCode::InvalidArgument,
                    "replication factor is fixed at 3");
    }
    if (cloud_uplinks < 1) {
        throw Error(ErrorCode::InvalidArgument, "cloud uplinks must be >= 1");
    }
    if (!(failure_fraction >= 0.0 && failure_fraction < 1.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    "failure fraction must lie in [0, 1)");
    }
}

Scenario generate_scenario(const ExperimentConfig& config, std::uint64_t seed) {
    config.validate();
    Rng rng(derive_seed(seed, /*stream=*/0x5ce0));

    // Topology first: structure, then roles, then the cloud.
    auto edges = barabasi_albert_edges(config.n_devices, config.ba_attach, rng);
    std::vector<DeviceAttrs> proto(config.n_devices);
    std::vector<Link> proto_links;
    proto_links.reserve(edges.size());
    for (auto [a, b] : edges) proto_links.push_back(Link{a, b, LinkAttrs{}});
    FogNetwork structure =
        FogNetwork::build(std::move(proto), std::move(proto_links));
    structure = assign_gateways(structure, config.gateway_fraction);

    // Attribute draws in a fixed order: links (canonical order), cloud
    // uplink, capacities, then per-file values.
    std::vector<Link> links = structure.links();
    for (auto& l : links) {
        l.attrs.propagation_ms =
            rng.uniform_real(config.propagation_ms.min, config.propagation_ms.max);
        l.attrs.bandwidth_bytes_per_ms = rng.uniform_real(
            config.bandwidth_bytes_per_ms.min, config.bandwidth_bytes_per_ms.max);
    }
    LinkAttrs uplink;
    uplink.propagation_ms =
        rng.uniform_real(config.propagation_ms.min, config.propagation_ms.max);
    uplink.bandwidth_bytes_per_ms = rng.uniform_real(
        config.bandwidth_bytes_per_ms.min, config.bandwidth_bytes_per_ms.max);

    std::vector<DeviceAttrs> devices;
    devices.reserve(config.n_devices);
    for (DeviceId i = 0; i < config.n_devices; ++i) {
        DeviceAttrs attrs;
        attrs.role = structure.device(i).role;
        attrs.storage_capacity =
            rng.uniform_int(config.device_capacity.min, config.device_capacity.max);
        devices.push_back(attrs);
    }

    FogNetwork attributed = FogNetwork::build(std::move(devices), std::move(links));
    FogNetwork network = attach_cloud(attributed, config.cloud_uplinks, uplink);

    auto gateways = network.devices_with_role(DeviceRole::Gateway);

    Scenario scenario;
    scenario.rng_seed = seed;
    scenario.consumer.consumer_device = *network.cloud();
    scenario.files.reserve(config.n_files);
    for (std::uint32_t f = 0; f < config.n_files; ++f) {
        FileSpec file;
        file.file_id = f;
        file.storage_req =
            rng.uniform_int(config.file_storage.min, config.file_storage.max);
        file.write_rate_per_ms = rng.uniform_real(config.write_rate_per_ms.min,
                                                  config.write_rate_per_ms.max);
        file.write_packet_bytes = rng.uniform_real(config.write_packet_bytes.min,
                                                   config.write_packet_bytes.max);
        file.read_rate_per_ms = rng.uniform_real(config.read_rate_per_ms.min,
                                                 config.read_rate_per_ms.max);
        file.read_packet_bytes = rng.uniform_real(config.read_packet_bytes.min,
                                                  config.read_packet_bytes.max);
        file.replication_factor = config.replication_factor;

        // Popularity in (0, max]; at most one sensor per gateway per file.
        double popularity = config.sensor_popularity_max * (1.0 - rng.unit());
        for (DeviceId g : gateways) {
            if (rng.bernoulli(popularity)) file.sensor_gateways.push_back(g);
        }
        if (file.sensor_gateways.empty()) {
            file.sensor_gateways.push_back(
                gateways[rng.below(gateways.size())]);
        }
        scenario.files.push_back(std::move(file));
    }

    scenario.network = std::move(network);
    return scenario;
}

double storage_usage_ratio(const Scenario& scenario) {
    long double demand = 0.0;
    for (const auto& f : scenario.files) {
        demand += static_cast<long double>(f.replication_factor) *
                  static_cast<long double>(f.storage_req);
    }
    long double capacity = 0.0;
    for (DeviceId i = 0; i < scenario.network.device_count(); ++i) {
        const auto& d = scenario.network.device(i);
        if (d.role == DeviceRole::Cloud) continue;
        capacity += static_cast<long double>(d.storage_capacity);
    }
    if (capacity <= 0.0) {
        throw Error(ErrorCode::InvalidArgument, "total fog capacity is zero");
    }
    return static_cast<double>(demand / capacity);
}

}  // namespace fogrep
