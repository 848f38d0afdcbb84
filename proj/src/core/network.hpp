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

#ifndef FOGREP_CORE_NETWORK_HPP
#define FOGREP_CORE_NETWORK_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/error.hpp"

namespace fogrep {

/// Device index. Ids are dense: 0..device_count()-1.
using DeviceId = std::uint32_t;

using StorageUnits = std::int64_t;

/// Sentinel for the cloud's effectively unbounded storage.
constexpr StorageUnits kUnboundedStorage =
    std::numeric_limits<StorageUnits>::max();

enum class DeviceRole : std::uint8_t { Fog, Gateway, Cloud };

const char* device_role_name(DeviceRole role);
std::optional<DeviceRole> device_role_from_name(const std::string& name);

struct DeviceAttrs {
    DeviceRole role = DeviceRole::Fog;
    StorageUnits storage_capacity = 0;
};

struct LinkAttrs {
    double propagation_ms = 1.0;
    double bandwidth_bytes_per_ms = 1.0;
};

/// Undirected link between two devices, stored with endpoints normalized
/// so that a < b.
struct Link {
    DeviceId a = 0;
    DeviceId b = 0;
    LinkAttrs attrs;
};

/// Per-link weights, indexed by the owning network's link index.
struct EdgeWeightMap {
    std::vector<double> by_link;
};

/// The physical layer: an attributed undirected simple graph of devices.
///
/// Immutable after construction. Operations that "modify" a network
/// (role assignment, cloud attachment, failure injection) return a new
/// value, so networks can be shared read-only across parallel workers.
class FogNetwork {
public:
    FogNetwork() = default;

    /// Validates and builds a network. Devices are implied by the attrs
    /// vector (id = position). Rejects self-loops, duplicate links,
    /// dangling endpoint ids, non-positive link attributes and more than
    /// one cloud device; names the offender in the error message.
    static FogNetwork build(std::vector<DeviceAttrs> devices,
                            std::vector<Link> links);

    std::size_t device_count() const { return devices_.size(); }
    std::size_t link_count() const { return links_.size(); }

    const DeviceAttrs& device(DeviceId id) const;
    const Link& link(std::size_t link_index) const { return links_[link_index]; }
    const std::vector<Link>& links() const { return links_; }

    /// Neighbors of `id` sorted by device id, paired with the link index.
    struct Neighbor {
        DeviceId id;
        std::uint32_t link_index;
    };
    std::span<const Neighbor> neighbors(DeviceId id) const;

    bool contains(DeviceId id) const { return id < devices_.size(); }
    bool is_up(DeviceId id) const;
    std::size_t up_count() const { return up_count_; }
    std::vector<DeviceId> up_devices() const;

    /// The unique cloud device, if one has been attached.
    std::optional<DeviceId> cloud() const;

    std::size_t count_role(DeviceRole role) const;
    std::vector<DeviceId> devices_with_role(DeviceRole role) const;

    /// Copy with the given devices marked down. Down devices and their
    /// incident links are excluded from all path computations.
    FogNetwork with_down(const std::vector<DeviceId>& down) const;

    /// Copy with every device up again.
    FogNetwork all_up() const;

    /// Copy with replaced roles (used by gateway/cloud assignment).
    FogNetwork with_roles(const std::vector<DeviceRole>& roles) const;

    /// Hop distances from `src` over the up subgraph; -1 = unreachable.
    /// Down `src` is an error.
    std::vector<std::int32_t> hop_distances(DeviceId src) const;

    /// True if every up device can reach every other up device.
    bool up_subgraph_connected() const;

private:
    void rebuild_adjacency();

    std::vector<DeviceAttrs> devices_;
    std::vector<Link> links_;                 // sorted by (a, b)
    std::vector<Neighbor> adjacency_;         // flattened, per-device slices
    std::vector<std::uint32_t> adj_offsets_;  // size devices_+1
    std::vector<std::uint8_t> up_;
    std::size_t up_count_ = 0;
};

/// Validated construction from an explicit edge list.
FogNetwork build_network(std::vector<DeviceAttrs> devices,
                         std::vector<Link> links);

/// Connected scale-free topology: seed path of `attach_m` devices, then
/// preferential attachment of `attach_m` distinct links per new device.
/// Link count is (attach_m - 1) + (n_devices - attach_m) * attach_m.
/// All devices are fog devices with placeholder link attributes; scenario
/// generation draws the real attributes.
FogNetwork generate_barabasi_albert(std::uint32_t n_devices,
                                    std::uint32_t attach_m,
                                    std::uint64_t rng_seed);

/// Edge structure only, drawing from a caller-owned RNG stream.
std::vector<std::pair<DeviceId, DeviceId>> barabasi_albert_edges(
    std::uint32_t n_devices, std::uint32_t attach_m, class Rng& rng);

/// Marks the floor(gateway_fraction * n) devices with the lowest
/// whole-graph betweenness as gateways; ties broken by lowest id.
FogNetwork assign_gateways(const FogNetwork& network, double gateway_fraction);

/// Adds one cloud device linked to the `uplink_count` highest-betweenness
/// non-gateway fog devices (ties by lowest id). Links fewer if not enough
/// candidates exist; zero candidates is a topology error.
FogNetwork attach_cloud(const FogNetwork& network, std::uint32_t uplink_count,
                        LinkAttrs uplink_attrs);

/// Weight of a link = sum over the sensor multiset (one entry per sensor,
/// counted with multiplicity) of the smaller endpoint-to-gateway hop
/// count. Unreachable gateways are a connectivity error.
EdgeWeightMap weight_by_hop_count(const FogNetwork& network,
                                  const std::vector<DeviceId>& sensor_gateways);

}  // namespace fogrep

#endif
