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

#include "core/placement.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "core/rng.hpp"

namespace fogrep {

namespace {

constexpr std::uint64_t kStreamKl = 0x6b;

// Free-capacity bookkeeping for one placement run. The cloud never runs
// out; debiting it is a no-op.
class CapacityLedger {
public:
    explicit CapacityLedger(const FogNetwork& network) {
        free_.reserve(network.device_count());
        for (DeviceId i = 0; i < network.device_count(); ++i) {
            free_.push_back(network.device(i).storage_capacity);
        }
    }

    StorageUnits free_capacity(DeviceId id) const { return free_[id]; }

    bool fits(DeviceId id, StorageUnits req) const { return free_[id] >= req; }

    void debit(DeviceId id, StorageUnits req) {
        if (free_[id] != kUnboundedStorage) free_[id] -= req;
    }

private:
    std::vector<StorageUnits> free_;
};

std::vector<std::pair<DeviceId, double>> sorted_centrality(
    const CentralityMap& map) {
    std::vector<std::pair<DeviceId, double>> out(map.values.begin(),
                                                 map.values.end());
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.second != y.second) return x.second > y.second;
        return x.first < y.first;
    });
    return out;
}

// Search one ordered candidate list for the first storage-feasible device
// that is not the cloud and not already used for this file. Records every
// examined candidate when tracing.
std::optional<DeviceId> pick_candidate(
    const std::vector<std::pair<DeviceId, double>>& ordered,
    const FogNetwork& network, const CapacityLedger& ledger, StorageUnits req,
    const std::vector<DeviceId>& used, TraceStep* step) {
    for (const auto& [dev, score] : ordered) {
        if (network.device(dev).role == DeviceRole::Cloud) continue;
        TraceCandidate cand;
        cand.device = dev;
        cand.centrality = score;
        cand.free_capacity = ledger.free_capacity(dev);
        if (std::find(used.begin(), used.end(), dev) != used.end()) {
            cand.reject = RejectReason::Duplicate;
            if (step) step->candidates.push_back(cand);
            continue;
        }
        if (!ledger.fits(dev, req)) {
            cand.reject = RejectReason::Capacity;
            if (step) step->candidates.push_back(cand);
            continue;
        }
        cand.chosen = true;
        if (step) step->candidates.push_back(cand);
        return dev;
    }
    return std::nullopt;
}

// Cloud overflow; a second overflow for the same file must find a fog
// device instead, since replicas are distinct devices.
DeviceId overflow_device(const Scenario& scenario, const CapacityLedger& ledger,
                         StorageUnits req, const std::vector<DeviceId>& used,
                         std::uint32_t* overflow_count, TraceStep* step) {
    DeviceId cloud = scenario.consumer.consumer_device;
    if (std::find(used.begin(), used.end(), cloud) == used.end()) {
        ++*overflow_count;
        if (step) step->overflowed = true;
        return cloud;
    }
    for (DeviceId dev = 0; dev < scenario.network.device_count(); ++dev) {
        if (dev == cloud) continue;
        if (std::find(used.begin(), used.end(), dev) != used.end()) continue;
        if (ledger.fits(dev, req)) {
            ++*overflow_count;
            if (step) step->overflowed = true;
            return dev;
        }
    }
    throw Error(ErrorCode::Capacity,
                "no distinct device can hold another replica of this file");
}

std::vector<std::pair<DeviceId, double>> restrict_to(
    const std::vector<std::pair<DeviceId, double>>& ordered,
    const std::vector<DeviceId>& members) {
    std::vector<std::pair<DeviceId, double>> out;
    out.reserve(members.size());
    for (const auto& entry : ordered) {
        if (std::find(members.begin(), members.end(), entry.first) !=
            members.end()) {
            out.push_back(entry);
        }
    }
    return out;
}

}  // namespace

const char* policy_name(Policy policy) {
    switch (policy) {
        case Policy::ReplicaAware: return "replica-aware";
        case Policy::SingleFile: return "single-file";
        case Policy::FogStore: return "fogstore";
    }
    return "?";
}

std::optional<Policy> policy_from_name(const std::string& name) {
    if (name == "replica-aware") return Policy::ReplicaAware;
    if (name == "single-file") return Policy::SingleFile;
    if (name == "fogstore") return Policy::FogStore;
    return std::nullopt;
}

std::vector<std::uint32_t> placement_order(const Scenario& scenario) {
    std::vector<std::uint32_t> order(scenario.files.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
        double rx = scenario.files[x].write_rate_per_ms;
        double ry = scenario.files[y].write_rate_per_ms;
        if (rx != ry) return rx > ry;
        return x < y;
    });
    return order;
}

PlacementResult place_replica_aware(const Scenario& scenario,
                                    bool record_trace) {
    const FogNetwork& net = scenario.network;
    if (!net.up_subgraph_connected()) {
        throw Error(ErrorCode::Connectivity, "network must be connected");
    }
    DeviceId cloud = scenario.consumer.consumer_device;

    PlacementResult result;
    result.policy = Policy::ReplicaAware;
    result.matrix.replicas_per_file = 3;
    result.matrix.assignments.assign(scenario.files.size(), {});

    CapacityLedger ledger(net);

    for (std::uint32_t file_id : placement_order(scenario)) {
        const FileSpec& file = scenario.files[file_id];
        FileTrace ft;
        ft.file_id = file_id;

        // Distinct sensor gateways are the centrality subset; the weight
        // map keeps per-sensor multiplicity.
        std::vector<DeviceId> subset = file.sensor_gateways;
        std::sort(subset.begin(), subset.end());
        subset.erase(std::unique(subset.begin(), subset.end()), subset.end());

        CentralityMap centrality = betweenness_subset(net, subset, subset);
        EdgeWeightMap weights = weight_by_hop_count(net, file.sensor_gateways);
        Bipartition parts = kernighan_lin_bipartition(
            net, weights, derive_seed(scenario.rng_seed, kStreamKl, file_id));

        auto ordered = sorted_centrality(centrality);
        auto rack_a = restrict_to(ordered, parts.part_a);
        auto rack_b = restrict_to(ordered, parts.part_b);

        std::vector<DeviceId>& chosen = result.matrix.assignments[file_id];

        // One replica per community; a full community falls back to the
        // other side before overflowing.
        for (int replica = 0; replica < 2; ++replica) {
            TraceStep step;
            step.replica_index = replica;
            const auto& primary = (replica == 0) ? rack_a : rack_b;
            const auto& secondary = (replica == 0) ? rack_b : rack_a;
            auto pick = pick_candidate(primary, net, ledger, file.storage_req,
                                       chosen, record_trace ? &step : nullptr);
            if (!pick) {
                pick = pick_candidate(secondary, net, ledger, file.storage_req,
                                      chosen, record_trace ? &step : nullptr);
            }
            DeviceId dev = pick ? *pick
                                : overflow_device(scenario, ledger,
                                                  file.storage_req, chosen,
                                                  &result.overflow_count,
                                                  record_trace ? &step : nullptr);
            chosen.push_back(dev);
            ledger.debit(dev, file.storage_req);
            if (record_trace) ft.steps.push_back(std::move(step));
        }

        // Third replica: consumer-aware subset (sensors plus the cloud).
        std::vector<DeviceId> with_cloud = subset;
        if (std::find(with_cloud.begin(), with_cloud.end(), cloud) ==
            with_cloud.end()) {
            with_cloud.push_back(cloud);
        }
        CentralityMap centrality_cloud =
            betweenness_subset(net, with_cloud, with_cloud);
        auto ordered_cloud = sorted_centrality(centrality_cloud);
        {
            TraceStep step;
            step.replica_index = 2;
            auto pick = pick_candidate(ordered_cloud, net, ledger,
                                       file.storage_req, chosen,
                                       record_trace ? &step : nullptr);
            DeviceId dev = pick ? *pick
                                : overflow_device(scenario, ledger,
                                                  file.storage_req, chosen,
                                                  &result.overflow_count,
                                                  record_trace ? &step : nullptr);
            chosen.push_back(dev);
            ledger.debit(dev, file.storage_req);
            if (record_trace) ft.steps.push_back(std::move(step));
        }

        if (record_trace) {
            ft.partition = parts;
            ft.centrality.assign(centrality.values.begin(),
                                 centrality.values.end());
            ft.centrality_with_cloud.assign(centrality_cloud.values.begin(),
                                            centrality_cloud.values.end());
            result.trace.files.push_back(std::move(ft));
        }
    }
    return result;
}

PlacementResult place_single_file(const Scenario& scenario, bool record_trace) {
    const FogNetwork& net = scenario.network;
    if (!net.up_subgraph_connected()) {
        throw Error(ErrorCode::Connectivity, "network must be connected");
    }

    PlacementResult result;
    result.policy = Policy::SingleFile;
    result.matrix.replicas_per_file = 1;
    result.matrix.assignments.assign(scenario.files.size(), {});

    CapacityLedger ledger(net);

    for (std::uint32_t file_id : placement_order(scenario)) {
        const FileSpec& file = scenario.files[file_id];
        FileTrace ft;
        ft.file_id = file_id;

        EdgeWeightMap weights = weight_by_hop_count(net, file.sensor_gateways);
        CentralityMap centrality = eigenvector_centrality(net, weights);
        auto ordered = sorted_centrality(centrality);

        std::vector<DeviceId>& chosen = result.matrix.assignments[file_id];
        TraceStep step;
        step.replica_index = 0;
        auto pick = pick_candidate(ordered, net, ledger, file.storage_req,
                                   chosen, record_trace ? &step : nullptr);
        DeviceId dev = pick ? *pick
                            : overflow_device(scenario, ledger, file.storage_req,
                                              chosen, &result.overflow_count,
                                              record_trace ? &step : nullptr);
        chosen.push_back(dev);
        ledger.debit(dev, file.storage_req);
        if (record_trace) {
            ft.centrality.assign(centrality.values.begin(),
                                 centrality.values.end());
            ft.steps.push_back(std::move(step));
            result.trace.files.push_back(std::move(ft));
        }
    }
    return result;
}

PlacementResult place_fogstore(const Scenario& scenario, std::uint64_t seed,
                               bool record_trace) {
    const FogNetwork& net = scenario.network;
    if (!net.up_subgraph_connected()) {
        throw Error(ErrorCode::Connectivity, "network must be connected");
    }
    DeviceId cloud = scenario.consumer.consumer_device;

    PlacementResult result;
    result.policy = Policy::FogStore;
    result.matrix.replicas_per_file = 3;
    result.matrix.assignments.assign(scenario.files.size(), {});

    CapacityLedger ledger(net);

    // Static failure groups: one unit-weight bipartition shared by every
    // file, standing in for an operator-provided region map.
    EdgeWeightMap unit;
    unit.by_link.assign(net.link_count(), 1.0);
    Bipartition parts =
        kernighan_lin_bipartition(net, unit, derive_seed(seed, kStreamKl));

    Rng rng(derive_seed(seed, /*stream=*/0xf05));

    for (std::uint32_t file_id : placement_order(scenario)) {
        const FileSpec& file = scenario.files[file_id];
        DeviceId source =
            file.sensor_gateways[rng.below(file.sensor_gateways.size())];

        // Candidate order: the shortest hop path from the source gateway
        // toward the cloud (lowest-id tie-breaks), then every remaining
        // device by hop distance from the source.
        auto dist = net.hop_distances(source);
        std::vector<DeviceId> path;
        if (dist[cloud] >= 0) {
            DeviceId at = cloud;
            while (at != source) {
                DeviceId next = at;
                for (const auto& nb : net.neighbors(at)) {
                    if (net.is_up(nb.id) && dist[nb.id] == dist[at] - 1) {
                        next = nb.id;
                        break;  // neighbors are id-sorted
                    }
                }
                path.push_back(at);
                at = next;
            }
            path.push_back(source);
            std::reverse(path.begin(), path.end());
        } else {
            path.push_back(source);
        }

        std::vector<DeviceId> candidates;
        std::vector<std::uint8_t> listed(net.device_count(), 0);
        for (DeviceId d : path) {
            if (d == cloud) continue;
            candidates.push_back(d);
            listed[d] = 1;
        }
        std::vector<DeviceId> rest;
        for (DeviceId d = 0; d < net.device_count(); ++d) {
            if (listed[d] || d == cloud || !net.is_up(d) || dist[d] < 0) continue;
            rest.push_back(d);
        }
        std::sort(rest.begin(), rest.end(), [&](DeviceId x, DeviceId y) {
            if (dist[x] != dist[y]) return dist[x] < dist[y];
            return x < y;
        });
        candidates.insert(candidates.end(), rest.begin(), rest.end());

        std::vector<DeviceId>& chosen = result.matrix.assignments[file_id];
        FileTrace ft;
        ft.file_id = file_id;
        ft.partition = parts;

        for (int replica = 0; replica < 3; ++replica) {
            TraceStep step;
            step.replica_index = replica;
            std::optional<DeviceId> pick;
            bool relaxed = false;
            for (int attempt = 0; attempt < 2 && !pick; ++attempt) {
                relaxed = attempt == 1;
                for (DeviceId dev : candidates) {
                    TraceCandidate cand;
                    cand.device = dev;
                    cand.free_capacity = ledger.free_capacity(dev);
                    if (std::find(chosen.begin(), chosen.end(), dev) !=
                        chosen.end()) {
                        cand.reject = RejectReason::Duplicate;
                        if (record_trace) step.candidates.push_back(cand);
                        continue;
                    }
                    if (!ledger.fits(dev, file.storage_req)) {
                        cand.reject = RejectReason::Capacity;
                        if (record_trace) step.candidates.push_back(cand);
                        continue;
                    }
                    // All replicas in one failure group is only rejected
                    // while an alternative might exist.
                    if (!relaxed && replica == 2 &&
                        parts.in_a(chosen[0]) == parts.in_a(chosen[1]) &&
                        parts.in_a(dev) == parts.in_a(chosen[0])) {
                        cand.reject = RejectReason::Partition;
                        if (record_trace) step.candidates.push_back(cand);
                        continue;
                    }
                    cand.chosen = true;
                    if (record_trace) step.candidates.push_back(cand);
                    pick = dev;
                    break;
                }
            }
            step.partition_rule_relaxed = pick && relaxed;
            DeviceId dev = pick ? *pick
                                : overflow_device(scenario, ledger,
                                                  file.storage_req, chosen,
                                                  &result.overflow_count,
                                                  record_trace ? &step : nullptr);
            chosen.push_back(dev);
            ledger.debit(dev, file.storage_req);
            if (record_trace) ft.steps.push_back(std::move(step));
        }
        if (record_trace) result.trace.files.push_back(std::move(ft));
    }
    return result;
}

PlacementResult place(const Scenario& scenario, Policy policy,
                      std::uint64_t seed, bool record_trace) {
    switch (policy) {
        case Policy::ReplicaAware: return place_replica_aware(scenario, record_trace);
        case Policy::SingleFile: return place_single_file(scenario, record_trace);
        case Policy::FogStore: return place_fogstore(scenario, seed, record_trace);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown policy");
}

std::string ConstraintViolation::describe() const {
    switch (kind) {
        case Kind::ReplicaCount:
            return fmt::format("file {}: wrong replica count", file_id);
        case Kind::DuplicateDevice:
            return fmt::format("file {}: device {} holds more than one replica",
                               file_id, device);
        case Kind::Capacity:
            return fmt::format("device {}: capacity exceeded by {}", device,
                               excess);
    }
    return "?";
}

ConstraintReport check_constraints(const PlacementMatrix& placement,
                                   const Scenario& scenario) {
    ConstraintReport report;
    std::vector<StorageUnits> used(scenario.network.device_count(), 0);

    for (std::uint32_t f = 0; f < placement.assignments.size(); ++f) {
        const auto& devices = placement.assignments[f];
        if (devices.size() != placement.replicas_per_file) {
            report.violations.push_back(
                {ConstraintViolation::Kind::ReplicaCount, f, 0, 0});
        }
        for (std::size_t i = 0; i < devices.size(); ++i) {
            for (std::size_t j = i + 1; j < devices.size(); ++j) {
                if (devices[i] == devices[j]) {
                    report.violations.push_back(
                        {ConstraintViolation::Kind::DuplicateDevice, f,
                         devices[i], 0});
                }
            }
            StorageUnits req = f < scenario.files.size()
                                   ? scenario.files[f].storage_req
                                   : 0;
            used[devices[i]] += req;
        }
    }
    for (DeviceId d = 0; d < scenario.network.device_count(); ++d) {
        StorageUnits cap = scenario.network.device(d).storage_capacity;
        if (cap != kUnboundedStorage && used[d] > cap) {
            report.violations.push_back(
                {ConstraintViolation::Kind::Capacity, 0, d, used[d] - cap});
        }
    }
    return report;
}

}  // namespace fogrep
