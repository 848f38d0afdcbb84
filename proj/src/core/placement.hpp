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

#ifndef FOGREP_CORE_PLACEMENT_HPP
#define FOGREP_CORE_PLACEMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/graph.hpp"
#include "core/workload.hpp"

namespace fogrep {

enum class Policy : std::uint8_t { ReplicaAware, SingleFile, FogStore };

const char* policy_name(Policy policy);
std::optional<Policy> policy_from_name(const std::string& name);

/// Binary file-to-device assignment. assignments[f] holds the devices of
/// file f's replicas in placement order (first, second, third).
struct PlacementMatrix {
    std::vector<std::vector<DeviceId>> assignments;
    std::uint32_t replicas_per_file = 3;

    const std::vector<DeviceId>& devices_of(std::uint32_t file_id) const {
        return assignments[file_id];
    }
};

/// Why a candidate was passed over.
enum class RejectReason : std::uint8_t {
    Capacity,    // not enough free storage
    Duplicate,   // already holds a replica of this file
    Partition,   // would violate the cross-partition rule
};

struct TraceCandidate {
    DeviceId device = 0;
    double centrality = 0.0;
    StorageUnits free_capacity = 0;
    bool chosen = false;
    RejectReason reject = RejectReason::Capacity;
};

/// The decision record for one replica: candidates examined in order, the
/// partition searched, and whether the choice overflowed to the cloud.
struct TraceStep {
    int replica_index = 0;
    std::vector<TraceCandidate> candidates;
    bool overflowed = false;
    bool partition_rule_relaxed = false;
};

struct FileTrace {
    std::uint32_t file_id = 0;
    Bipartition partition;                  // empty parts when unused
    std::vector<std::pair<DeviceId, double>> centrality;  // replica 1-2 map
    std::vector<std::pair<DeviceId, double>> centrality_with_cloud;
    std::vector<TraceStep> steps;
};

/// Replayable audit log: re-applying the chosen devices reproduces the
/// matrix exactly.
struct PlacementTrace {
    std::vector<FileTrace> files;
};

struct PlacementResult {
    PlacementMatrix matrix;
    PlacementTrace trace;  // populated when record_trace is set
    std::uint32_t overflow_count = 0;
    Policy policy = Policy::ReplicaAware;
};

/// Community-aware replica placement: files in descending write-rate
/// order; per file, a hop-count-weighted Kernighan-Lin bipartition places
/// one replica per side at the highest sensor-subset betweenness with
/// free capacity, and the third replica maximizes betweenness over the
/// sensors plus the cloud. Capacity exhaustion overflows to the cloud and
/// is counted.
PlacementResult place_replica_aware(const Scenario& scenario,
                                    bool record_trace = false);

/// Single-replica baseline: per file, eigenvector centrality on the
/// hop-count-weighted graph; the highest-scoring device with capacity
/// receives the only replica.
PlacementResult place_single_file(const Scenario& scenario,
                                  bool record_trace = false);

/// Greedy replica baseline: one sensor gateway drawn per file (seeded),
/// replicas on the first capacity-feasible devices along the shortest
/// hop path from that gateway toward the cloud (then nearest-by-hops),
/// with at least one replica forced into the other half of a fixed
/// unit-weight bipartition.
PlacementResult place_fogstore(const Scenario& scenario, std::uint64_t seed,
                               bool record_trace = false);

PlacementResult place(const Scenario& scenario, Policy policy,
                      std::uint64_t seed, bool record_trace = false);

struct ConstraintViolation {
    enum class Kind : std::uint8_t { ReplicaCount, DuplicateDevice, Capacity };
    Kind kind;
    std::uint32_t file_id = 0;   // ReplicaCount / DuplicateDevice
    DeviceId device = 0;         // DuplicateDevice / Capacity
    StorageUnits excess = 0;     // Capacity
    std::string describe() const;
};

struct ConstraintReport {
    std::vector<ConstraintViolation> violations;
    bool feasible() const { return violations.empty(); }
};

/// Checks the replica-count and per-device capacity constraints; lists
/// every violation with the offending file/device ids.
ConstraintReport check_constraints(const PlacementMatrix& placement,
                                   const Scenario& scenario);

/// Files ordered for placement: descending write rate, ties by id.
std::vector<std::uint32_t> placement_order(const Scenario& scenario);

}  // namespace fogrep

#endif
