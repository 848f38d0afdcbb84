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

#include "core/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "core/graph.hpp"
#include "core/rng.hpp"

namespace fogrep {

namespace {

// Connected-component labels over the up subgraph; -1 for down devices.
std::vector<std::int32_t> component_labels(const FogNetwork& network) {
    std::vector<std::int32_t> label(network.device_count(), -1);
    std::int32_t next = 0;
    std::vector<DeviceId> stack;
    for (DeviceId s = 0; s < network.device_count(); ++s) {
        if (!network.is_up(s) || label[s] >= 0) continue;
        label[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            DeviceId u = stack.back();
            stack.pop_back();
            for (const auto& nb : network.neighbors(u)) {
                if (network.is_up(nb.id) && label[nb.id] < 0) {
                    label[nb.id] = next;
                    stack.push_back(nb.id);
                }
            }
        }
        ++next;
    }
    return label;
}

// Hop distances from each distinct gateway, computed once per network.
class HopCache {
public:
    explicit HopCache(const FogNetwork& network) : network_(network) {}

    const std::vector<std::int32_t>& from(DeviceId src) {
        auto it = cache_.find(src);
        if (it == cache_.end()) {
            it = cache_.emplace(src, network_.hop_distances(src)).first;
        }
        return it->second;
    }

private:
    const FogNetwork& network_;
    std::unordered_map<DeviceId, std::vector<std::int32_t>> cache_;
};

}  // namespace

FailureMask sample_failure_mask(const FogNetwork& network, double fraction,
                                std::uint64_t seed) {
    if (!(fraction >= 0.0 && fraction < 1.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    "failure fraction must lie in [0, 1)");
    }
    std::vector<DeviceId> eligible;
    for (DeviceId d = 0; d < network.device_count(); ++d) {
        if (network.device(d).role != DeviceRole::Cloud) eligible.push_back(d);
    }
    const auto count = static_cast<std::size_t>(
        fraction * static_cast<double>(eligible.size()));

    Rng rng(seed);
    // Partial Fisher-Yates: the first `count` entries are the sample.
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.below(eligible.size() - i));
        std::swap(eligible[i], eligible[j]);
    }
    FailureMask mask;
    mask.fraction = fraction;
    mask.seed = seed;
    mask.down_devices.assign(eligible.begin(), eligible.begin() + count);
    std::sort(mask.down_devices.begin(), mask.down_devices.end());
    return mask;
}

FogNetwork inject_failures(const FogNetwork& network, double fraction,
                           std::uint64_t seed) {
    return network.with_down(
        sample_failure_mask(network, fraction, seed).down_devices);
}

double availability_read(const Scenario& scenario,
                         const PlacementMatrix& placement,
                         const FogNetwork& network) {
    if (scenario.files.empty()) return 1.0;
    auto label = component_labels(network);
    DeviceId cloud = scenario.consumer.consumer_device;
    std::int32_t cloud_comp = label[cloud];

    std::size_t available = 0;
    for (std::uint32_t f = 0; f < scenario.files.size(); ++f) {
        for (DeviceId dev : placement.devices_of(f)) {
            if (network.is_up(dev) && label[dev] == cloud_comp) {
                ++available;
                break;
            }
        }
    }
    return static_cast<double>(available) /
           static_cast<double>(scenario.files.size());
}

double availability_write(const Scenario& scenario,
                          const PlacementMatrix& placement,
                          const FogNetwork& network) {
    if (scenario.files.empty()) return 1.0;
    auto label = component_labels(network);

    std::size_t available = 0;
    for (std::uint32_t f = 0; f < scenario.files.size(); ++f) {
        const auto& devices = placement.devices_of(f);
        bool all_sensors_ok = true;
        for (DeviceId g : scenario.files[f].sensor_gateways) {
            bool reaches = false;
            if (network.is_up(g)) {
                for (DeviceId dev : devices) {
                    if (network.is_up(dev) && label[dev] == label[g]) {
                        reaches = true;
                        break;
                    }
                }
            }
            if (!reaches) {
                all_sensors_ok = false;
                break;
            }
        }
        if (all_sensors_ok) ++available;
    }
    return static_cast<double>(available) /
           static_cast<double>(scenario.files.size());
}

LatencyRead latency_read(const Scenario& scenario,
                         const PlacementMatrix& placement,
                         const FogNetwork& network) {
    LatencyRead out;
    DeviceId cloud = scenario.consumer.consumer_device;
    double sum = 0.0;
    std::size_t included = 0;
    for (std::uint32_t f = 0; f < scenario.files.size(); ++f) {
        const FileSpec& file = scenario.files[f];
        double best = std::numeric_limits<double>::infinity();
        for (DeviceId dev : placement.devices_of(f)) {
            if (!network.is_up(dev)) continue;
            auto lat = shortest_latency(network, cloud, dev, file.read_packet_bytes);
            if (lat && *lat < best) best = *lat;
        }
        if (std::isinf(best)) {
            ++out.excluded_files;
        } else {
            sum += best;
            ++included;
        }
    }
    out.total_ms = sum;
    out.mean_ms = included > 0 ? sum / static_cast<double>(included) : 0.0;
    return out;
}

LatencyWriteExtrema latency_write_extrema(const Scenario& scenario,
                                          const PlacementMatrix& placement,
                                          const FogNetwork& network) {
    LatencyWriteExtrema out;
    double sum_min = 0.0, sum_max = 0.0;
    std::size_t included = 0;
    for (std::uint32_t f = 0; f < scenario.files.size(); ++f) {
        const FileSpec& file = scenario.files[f];
        for (DeviceId g : file.sensor_gateways) {
            if (!network.is_up(g)) {
                ++out.excluded_pairs;
                continue;
            }
            double lo = std::numeric_limits<double>::infinity();
            double hi = -std::numeric_limits<double>::infinity();
            for (DeviceId dev : placement.devices_of(f)) {
                if (!network.is_up(dev)) continue;
                auto lat =
                    shortest_latency(network, g, dev, file.write_packet_bytes);
                if (!lat) continue;
                lo = std::min(lo, *lat);
                hi = std::max(hi, *lat);
            }
            if (std::isinf(lo)) {
                ++out.excluded_pairs;
            } else {
                sum_min += lo;
                sum_max += hi;
                ++included;
            }
        }
    }
    if (included > 0) {
        out.min_ms = sum_min / static_cast<double>(included);
        out.max_ms = sum_max / static_cast<double>(included);
    }
    return out;
}

std::uint64_t messages_write(const Scenario& scenario,
                             const PlacementMatrix& placement,
                             const FogNetwork& network) {
    HopCache hops(network);
    std::uint64_t total = 0;
    for (std::uint32_t f = 0; f < scenario.files.size(); ++f) {
        for (DeviceId g : scenario.files[f].sensor_gateways) {
            if (!network.is_up(g)) continue;
            const auto& dist = hops.from(g);
            for (DeviceId dev : placement.devices_of(f)) {
                if (network.is_up(dev) && dist[dev] >= 0) {
                    total += static_cast<std::uint64_t>(dist[dev]);
                }
            }
        }
    }
    return total;
}

std::uint64_t messages_read(const Scenario& scenario,
                            const PlacementMatrix& placement,
                            const FogNetwork& network) {
    DeviceId cloud = scenario.consumer.consumer_device;
    auto dist = network.hop_distances(cloud);
    std::uint64_t total = 0;
    for (std::uint32_t f = 0; f < scenario.files.size(); ++f) {
        std::int64_t best = -1;
        for (DeviceId dev : placement.devices_of(f)) {
            if (!network.is_up(dev) || dist[dev] < 0) continue;
            if (best < 0 || dist[dev] < best) best = dist[dev];
        }
        if (best > 0) total += static_cast<std::uint64_t>(best);
    }
    return total;
}

MetricsReport evaluate_all(const Scenario& scenario,
                           const PlacementMatrix& placement,
                           const FogNetwork& healthy_network,
                           const std::vector<FailureMask>& failure_masks) {
    MetricsReport report;

    auto read = latency_read(scenario, placement, healthy_network);
    report.lat_read_ms = read.mean_ms;
    report.lat_read_total_ms = read.total_ms;
    report.lat_read_excluded = read.excluded_files;

    auto write = latency_write_extrema(scenario, placement, healthy_network);
    report.lat_write_min_ms = write.min_ms;
    report.lat_write_max_ms = write.max_ms;
    report.lat_write_excluded = write.excluded_pairs;

    report.msgs_write = messages_write(scenario, placement, healthy_network);
    report.msgs_read = messages_read(scenario, placement, healthy_network);

    // Rate-weighted variants: the same path-hop sums scaled by each
    // file's request rate.
    {
        HopCache hops(healthy_network);
        DeviceId cloud = scenario.consumer.consumer_device;
        auto cloud_dist = healthy_network.hop_distances(cloud);
        double ww = 0.0, wr = 0.0;
        for (std::uint32_t f = 0; f < scenario.files.size(); ++f) {
            const FileSpec& file = scenario.files[f];
            std::uint64_t file_hops = 0;
            for (DeviceId g : file.sensor_gateways) {
                const auto& dist = hops.from(g);
                for (DeviceId dev : placement.devices_of(f)) {
                    if (dist[dev] >= 0) {
                        file_hops += static_cast<std::uint64_t>(dist[dev]);
                    }
                }
            }
            ww += file.write_rate_per_ms * static_cast<double>(file_hops);
            std::int64_t best = -1;
            for (DeviceId dev : placement.devices_of(f)) {
                if (cloud_dist[dev] < 0) continue;
                if (best < 0 || cloud_dist[dev] < best) best = cloud_dist[dev];
            }
            if (best > 0) {
                wr += file.read_rate_per_ms * static_cast<double>(best);
            }
        }
        report.msgs_write_rate_weighted = ww;
        report.msgs_read_rate_weighted = wr;
    }

    if (failure_masks.empty()) {
        report.avail_read = 1.0;
        report.avail_write = 1.0;
    } else {
        double ar = 0.0, aw = 0.0;
        for (const FailureMask& mask : failure_masks) {
            FogNetwork degraded = healthy_network.with_down(mask.down_devices);
            ar += availability_read(scenario, placement, degraded);
            aw += availability_write(scenario, placement, degraded);
        }
        report.avail_read = ar / static_cast<double>(failure_masks.size());
        report.avail_write = aw / static_cast<double>(failure_masks.size());
    }
    return report;
}

}  // namespace fogrep
