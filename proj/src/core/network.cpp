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

#include "core/network.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include <fmt/format.h>

#include "core/graph.hpp"
#include "core/rng.hpp"

namespace fogrep {

const char* device_role_name(DeviceRole role) {
    switch (role) {
        case DeviceRole::Fog: return "fog";
        case DeviceRole::Gateway: return "gateway";
        case DeviceRole::Cloud: return "cloud";
    }
    return "?";
}

std::optional<DeviceRole> device_role_from_name(const std::string& name) {
    if (name == "fog") return DeviceRole::Fog;
    if (name == "gateway") return DeviceRole::Gateway;
    if (name == "cloud") return DeviceRole::Cloud;
    return std::nullopt;
}

FogNetwork FogNetwork::build(std::vector<DeviceAttrs> devices,
                             std::vector<Link> links) {
    const std::size_t n = devices.size();
    std::size_t clouds = 0;
    for (const auto& d : devices) {
        if (d.role == DeviceRole::Cloud) ++clouds;
    }
    if (clouds > 1) {
        throw Error(ErrorCode::Validation,
                    fmt::format("{} cloud devices declared, at most one allowed",
                                clouds));
    }

    for (auto& l : links) {
        if (l.a == l.b) {
            throw Error(ErrorCode::Validation,
                        fmt::format("self-loop on device {}", l.a));
        }
        if (l.a > l.b) std::swap(l.a, l.b);
        if (l.b >= n) {
            throw Error(ErrorCode::Validation,
                        fmt::format("link ({}, {}) references unknown device {}",
                                    l.a, l.b, l.b));
        }
        if (!(l.attrs.propagation_ms > 0.0)) {
            throw Error(ErrorCode::Validation,
                        fmt::format("link ({}, {}) has non-positive propagation",
                                    l.a, l.b));
        }
        if (!(l.attrs.bandwidth_bytes_per_ms > 0.0)) {
            throw Error(ErrorCode::Validation,
                        fmt::format("link ({}, {}) has non-positive bandwidth",
                                    l.a, l.b));
        }
    }
    std::sort(links.begin(), links.end(), [](const Link& x, const Link& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    for (std::size_t i = 1; i < links.size(); ++i) {
        if (links[i - 1].a == links[i].a && links[i - 1].b == links[i].b) {
            throw Error(ErrorCode::Validation,
                        fmt::format("duplicate link ({}, {})", links[i].a,
                                    links[i].b));
        }
    }

    FogNetwork net;
    net.devices_ = std::move(devices);
    net.links_ = std::move(links);
    net.up_.assign(n, 1);
    net.up_count_ = n;
    net.rebuild_adjacency();
    return net;
}

void FogNetwork::rebuild_adjacency() {
    const std::size_t n = devices_.size();
    std::vector<std::uint32_t> degree(n, 0);
    for (const auto& l : links_) {
        ++degree[l.a];
        ++degree[l.b];
    }
    adj_offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        adj_offsets_[i + 1] = adj_offsets_[i] + degree[i];
    }
    adjacency_.assign(adj_offsets_[n], Neighbor{});
    std::vector<std::uint32_t> fill(adj_offsets_.begin(), adj_offsets_.end() - 1);
    for (std::uint32_t li = 0; li < links_.size(); ++li) {
        const Link& l = links_[li];
        adjacency_[fill[l.a]++] = Neighbor{l.b, li};
        adjacency_[fill[l.b]++] = Neighbor{l.a, li};
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::sort(adjacency_.begin() + adj_offsets_[i],
                  adjacency_.begin() + adj_offsets_[i + 1],
                  [](const Neighbor& x, const Neighbor& y) { return x.id < y.id; });
    }
}

const DeviceAttrs& FogNetwork::device(DeviceId id) const {
    if (!contains(id)) {
        throw Error(ErrorCode::Lookup, fmt::format("unknown device {}", id));
    }
    return devices_[id];
}

std::span<const FogNetwork::Neighbor> FogNetwork::neighbors(DeviceId id) const {
    if (!contains(id)) {
        throw Error(ErrorCode::Lookup, fmt::format("unknown device {}", id));
    }
    return {adjacency_.data() + adj_offsets_[id],
            adj_offsets_[id + 1] - adj_offsets_[id]};
}

bool FogNetwork::is_up(DeviceId id) const {
    return contains(id) && up_[id] != 0;
}

std::vector<DeviceId> FogNetwork::up_devices() const {
    std::vector<DeviceId> out;
    out.reserve(up_count_);
    for (DeviceId i = 0; i < devices_.size(); ++i) {
        if (up_[i]) out.push_back(i);
    }
    return out;
}

std::optional<DeviceId> FogNetwork::cloud() const {
    for (DeviceId i = 0; i < devices_.size(); ++i) {
        if (devices_[i].role == DeviceRole::Cloud) return i;
    }
    return std::nullopt;
}

std::size_t FogNetwork::count_role(DeviceRole role) const {
    std::size_t c = 0;
    for (const auto& d : devices_) {
        if (d.role == role) ++c;
    }
    return c;
}

std::vector<DeviceId> FogNetwork::devices_with_role(DeviceRole role) const {
    std::vector<DeviceId> out;
    for (DeviceId i = 0; i < devices_.size(); ++i) {
        if (devices_[i].role == role) out.push_back(i);
    }
    return out;
}

FogNetwork FogNetwork::with_down(const std::vector<DeviceId>& down) const {
    FogNetwork net = *this;
    for (DeviceId id : down) {
        if (!net.contains(id)) {
            throw Error(ErrorCode::Lookup, fmt::format("unknown device {}", id));
        }
        if (net.up_[id]) {
            net.up_[id] = 0;
            --net.up_count_;
        }
    }
    return net;
}

FogNetwork FogNetwork::all_up() const {
    FogNetwork net = *this;
    net.up_.assign(net.devices_.size(), 1);
    net.up_count_ = net.devices_.size();
    return net;
}

FogNetwork FogNetwork::with_roles(const std::vector<DeviceRole>& roles) const {
    if (roles.size() != devices_.size()) {
        throw Error(ErrorCode::InvalidArgument, "role vector size mismatch");
    }
    FogNetwork net = *this;
    for (std::size_t i = 0; i < roles.size(); ++i) {
        net.devices_[i].role = roles[i];
    }
    std::size_t clouds = net.count_role(DeviceRole::Cloud);
    if (clouds > 1) {
        throw Error(ErrorCode::Validation, "more than one cloud device");
    }
    return net;
}

std::vector<std::int32_t> FogNetwork::hop_distances(DeviceId src) const {
    if (!is_up(src)) {
        throw Error(ErrorCode::Lookup,
                    fmt::format("device {} is down or unknown", src));
    }
    std::vector<std::int32_t> dist(devices_.size(), -1);
    std::deque<DeviceId> queue;
    dist[src] = 0;
    queue.push_back(src);
    while (!queue.empty()) {
        DeviceId u = queue.front();
        queue.pop_front();
        for (const Neighbor& nb : neighbors(u)) {
            if (!up_[nb.id] || dist[nb.id] >= 0) continue;
            dist[nb.id] = dist[u] + 1;
            queue.push_back(nb.id);
        }
    }
    return dist;
}

bool FogNetwork::up_subgraph_connected() const {
    if (up_count_ == 0) return true;
    DeviceId start = 0;
    while (start < devices_.size() && !up_[start]) ++start;
    auto dist = hop_distances(start);
    for (DeviceId i = 0; i < devices_.size(); ++i) {
        if (up_[i] && dist[i] < 0) return false;
    }
    return true;
}

FogNetwork build_network(std::vector<DeviceAttrs> devices,
                         std::vector<Link> links) {
    return FogNetwork::build(std::move(devices), std::move(links));
}

std::vector<std::pair<DeviceId, DeviceId>> barabasi_albert_edges(
    std::uint32_t n_devices, std::uint32_t attach_m, Rng& rng) {
    if (attach_m < 1 || n_devices <= attach_m) {
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("need n_devices > attach_m >= 1, got n={} m={}",
                                n_devices, attach_m));
    }
    std::vector<std::pair<DeviceId, DeviceId>> edges;
    edges.reserve((attach_m - 1) + (n_devices - attach_m) * attach_m);

    // One entry per unit of degree; drives preferential attachment.
    std::vector<DeviceId> repeated;
    for (DeviceId v = 1; v < attach_m; ++v) {
        edges.emplace_back(v - 1, v);
        repeated.push_back(v - 1);
        repeated.push_back(v);
    }

    std::vector<DeviceId> targets;
    for (DeviceId v = attach_m; v < n_devices; ++v) {
        targets.clear();
        while (targets.size() < attach_m) {
            DeviceId t;
            if (repeated.empty()) {
                t = static_cast<DeviceId>(rng.below(v));
            } else {
                t = repeated[rng.below(repeated.size())];
            }
            if (std::find(targets.begin(), targets.end(), t) == targets.end()) {
                targets.push_back(t);
            }
        }
        for (DeviceId t : targets) {
            edges.emplace_back(std::min(v, t), std::max(v, t));
            repeated.push_back(v);
            repeated.push_back(t);
        }
    }
    return edges;
}

FogNetwork generate_barabasi_albert(std::uint32_t n_devices,
                                    std::uint32_t attach_m,
                                    std::uint64_t rng_seed) {
    Rng rng(rng_seed);
    auto edges = barabasi_albert_edges(n_devices, attach_m, rng);
    std::vector<DeviceAttrs> devices(n_devices);
    std::vector<Link> links;
    links.reserve(edges.size());
    for (auto [a, b] : edges) {
        links.push_back(Link{a, b, LinkAttrs{}});
    }
    return FogNetwork::build(std::move(devices), std::move(links));
}

namespace {

// Ids ordered by centrality; `ascending` picks the lowest-centrality end.
// Ties always resolve to the lowest device id.
std::vector<DeviceId> order_by_centrality(const std::vector<DeviceId>& ids,
                                          const CentralityMap& centrality,
                                          bool ascending) {
    std::vector<DeviceId> sorted = ids;
    std::sort(sorted.begin(), sorted.end(), [&](DeviceId x, DeviceId y) {
        double cx = centrality.values.at(x);
        double cy = centrality.values.at(y);
        if (cx != cy) return ascending ? cx < cy : cx > cy;
        return x < y;
    });
    return sorted;
}

}  // namespace

FogNetwork assign_gateways(const FogNetwork& network, double gateway_fraction) {
    if (!(gateway_fraction > 0.0 && gateway_fraction < 1.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("gateway fraction {} outside (0, 1)",
                                gateway_fraction));
    }
    const auto n = static_cast<double>(network.device_count());
    const auto count = static_cast<std::size_t>(gateway_fraction * n);

    CentralityMap centrality = betweenness_all(network);
    auto ordered =
        order_by_centrality(network.up_devices(), centrality, /*ascending=*/true);

    std::vector<DeviceRole> roles;
    roles.reserve(network.device_count());
    for (DeviceId i = 0; i < network.device_count(); ++i) {
        roles.push_back(network.device(i).role);
    }
    for (std::size_t i = 0; i < count && i < ordered.size(); ++i) {
        roles[ordered[i]] = DeviceRole::Gateway;
    }
    return network.with_roles(roles);
}

FogNetwork attach_cloud(const FogNetwork& network, std::uint32_t uplink_count,
                        LinkAttrs uplink_attrs) {
    if (uplink_count < 1) {
        throw Error(ErrorCode::InvalidArgument, "uplink_count must be >= 1");
    }
    if (network.cloud()) {
        throw Error(ErrorCode::Topology, "network already has a cloud device");
    }
    std::vector<DeviceId> candidates = network.devices_with_role(DeviceRole::Fog);
    if (candidates.empty()) {
        throw Error(ErrorCode::Topology,
                    "no non-gateway fog device available for cloud uplinks");
    }
    CentralityMap centrality = betweenness_all(network);
    auto ordered =
        order_by_centrality(candidates, centrality, /*ascending=*/false);
    if (ordered.size() > uplink_count) ordered.resize(uplink_count);

    std::vector<DeviceAttrs> devices;
    devices.reserve(network.device_count() + 1);
    for (DeviceId i = 0; i < network.device_count(); ++i) {
        devices.push_back(network.device(i));
    }
    const auto cloud_id = static_cast<DeviceId>(devices.size());
    devices.push_back(DeviceAttrs{DeviceRole::Cloud, kUnboundedStorage});

    std::vector<Link> links = network.links();
    for (DeviceId up : ordered) {
        links.push_back(Link{up, cloud_id, uplink_attrs});
    }
    return FogNetwork::build(std::move(devices), std::move(links));
}

EdgeWeightMap weight_by_hop_count(const FogNetwork& network,
                                  const std::vector<DeviceId>& sensor_gateways) {
    EdgeWeightMap map;
    map.by_link.assign(network.link_count(), 0.0);

    // Multiplicity per distinct gateway; one BFS each.
    std::vector<std::pair<DeviceId, std::size_t>> distinct;
    for (DeviceId g : sensor_gateways) {
        auto it = std::find_if(distinct.begin(), distinct.end(),
                               [g](const auto& p) { return p.first == g; });
        if (it == distinct.end()) {
            distinct.emplace_back(g, 1);
        } else {
            ++it->second;
        }
    }

    for (auto [gateway, multiplicity] : distinct) {
        auto dist = network.hop_distances(gateway);
        for (std::size_t li = 0; li < network.link_count(); ++li) {
            const Link& l = network.link(li);
            if (!network.is_up(l.a) || !network.is_up(l.b)) continue;
            if (dist[l.a] < 0 && dist[l.b] < 0) {
                throw Error(ErrorCode::Connectivity,
                            fmt::format("gateway {} unreachable from link ({}, {})",
                                        gateway, l.a, l.b));
            }
            std::int64_t m = dist[l.a] < 0   ? dist[l.b]
                             : dist[l.b] < 0 ? dist[l.a]
                                             : std::min(dist[l.a], dist[l.b]);
            map.by_link[li] +=
                static_cast<double>(m) * static_cast<double>(multiplicity);
        }
    }
    return map;
}

}  // namespace fogrep
