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

#ifndef FOGREP_CORE_GRAPH_HPP
#define FOGREP_CORE_GRAPH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "core/network.hpp"

namespace fogrep {

/// Centrality scores, defined for every up device.
struct CentralityMap {
    std::map<DeviceId, double> values;
};

/// Balanced two-way split of the considered devices (sizes differ by <= 1).
struct Bipartition {
    std::vector<DeviceId> part_a;  // contains the lowest considered id
    std::vector<DeviceId> part_b;

    bool in_a(DeviceId id) const;
};

/// Minimum link count between src and dst over the up subgraph.
/// nullopt = unreachable. Down or unknown endpoints are a lookup error.
std::optional<std::uint32_t> shortest_hops(const FogNetwork& network,
                                           DeviceId src, DeviceId dst);

/// Latency of one link for a packet of the given size.
inline double link_latency_ms(const LinkAttrs& attrs, double packet_bytes) {
    return attrs.propagation_ms + packet_bytes / attrs.bandwidth_bytes_per_ms;
}

/// Minimum over paths of the summed per-link latencies
/// (propagation + packet_bytes / bandwidth). nullopt = unreachable.
std::optional<double> shortest_latency(const FogNetwork& network, DeviceId src,
                                       DeviceId dst, double packet_bytes);

/// Betweenness restricted to ordered (source, target) pairs, s != t, with
/// endpoints excluded. Shortest paths are counted by hops. Scores are
/// normalized by the number of contributing pairs
/// (|sources| * |targets| - |sources ∩ targets|), so values lie in [0, 1].
CentralityMap betweenness_subset(const FogNetwork& network,
                                 const std::vector<DeviceId>& sources,
                                 const std::vector<DeviceId>& targets);

/// Whole-graph betweenness: sources = targets = all up devices.
CentralityMap betweenness_all(const FogNetwork& network);

/// Principal-eigenvector scores of the affinity matrix derived from the
/// edge weights (affinity = 1 / (1 + weight); weights are hop distances,
/// so nearer means stronger). Power iteration on (A + I) to tolerance
/// 1e-8, capped at 1000 iterations; scores normalized to unit maximum.
/// Requires a connected up subgraph.
CentralityMap eigenvector_centrality(const FogNetwork& network,
                                     const EdgeWeightMap& edge_weights);

/// Balanced bipartition locally minimizing the summed weight of crossing
/// links under Kernighan-Lin pair swaps. The seed selects the initial
/// balanced split; the result is deterministic for a fixed seed.
Bipartition kernighan_lin_bipartition(const FogNetwork& network,
                                      const EdgeWeightMap& edge_weights,
                                      std::uint64_t rng_seed);

/// Summed weight of links crossing the partition.
double cut_cost(const FogNetwork& network, const EdgeWeightMap& edge_weights,
                const Bipartition& partition);

}  // namespace fogrep

#endif
