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

#include "core/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>

#include <fmt/format.h>

#include "core/rng.hpp"

namespace fogrep {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "invalid-argument";
        case ErrorCode::Validation: return "validation";
        case ErrorCode::Topology: return "topology";
        case ErrorCode::Connectivity: return "connectivity";
        case ErrorCode::Lookup: return "lookup";
        case ErrorCode::Capacity: return "capacity";
        case ErrorCode::Numeric: return "numeric";
        case ErrorCode::Parse: return "parse";
        case ErrorCode::Io: return "io";
    }
    return "?";
}

bool Bipartition::in_a(DeviceId id) const {
    return std::find(part_a.begin(), part_a.end(), id) != part_a.end();
}

std::optional<std::uint32_t> shortest_hops(const FogNetwork& network,
                                           DeviceId src, DeviceId dst) {
    if (!network.is_up(dst)) {
        throw Error(ErrorCode::Lookup,
                    fmt::format("device {} is down or unknown", dst));
    }
    auto dist = network.hop_distances(src);  // validates src
    if (dist[dst] < 0) return std::nullopt;
    return static_cast<std::uint32_t>(dist[dst]);
}

std::optional<double> shortest_latency(const FogNetwork& network, DeviceId src,
                                       DeviceId dst, double packet_bytes) {
    if (!network.is_up(src) || !network.is_up(dst)) {
        throw Error(ErrorCode::Lookup, "endpoint device is down or unknown");
    }
    if (!(packet_bytes > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "packet size must be positive");
    }
    if (src == dst) return 0.0;

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(network.device_count(), kInf);
    using Item = std::pair<double, DeviceId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[src] = 0.0;
    heap.emplace(0.0, src);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        if (u == dst) return d;
        for (const auto& nb : network.neighbors(u)) {
            if (!network.is_up(nb.id)) continue;
            double nd =
                d + link_latency_ms(network.link(nb.link_index).attrs, packet_bytes);
            if (nd < dist[nb.id]) {
                dist[nb.id] = nd;
                heap.emplace(nd, nb.id);
            }
        }
    }
    return std::nullopt;
}

CentralityMap betweenness_subset(const FogNetwork& network,
                                 const std::vector<DeviceId>& sources,
                                 const std::vector<DeviceId>& targets) {
    if (sources.empty() || targets.empty()) {
        throw Error(ErrorCode::InvalidArgument,
                    "betweenness requires nonempty source and target sets");
    }
    for (DeviceId s : sources) {
        if (!network.is_up(s)) {
            throw Error(ErrorCode::Lookup,
                        fmt::format("source device {} is down or unknown", s));
        }
    }
    const std::size_t n = network.device_count();
    std::vector<std::uint8_t> is_target(n, 0);
    for (DeviceId t : targets) {
        if (!network.is_up(t)) {
            throw Error(ErrorCode::Lookup,
                        fmt::format("target device {} is down or unknown", t));
        }
        is_target[t] = 1;
    }

    std::vector<double> score(n, 0.0);

    // Brandes accumulation, restricted to the target set.
    std::vector<std::int32_t> dist(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<std::vector<DeviceId>> preds(n);
    std::vector<DeviceId> order;
    order.reserve(n);

    for (DeviceId s : sources) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : preds) p.clear();
        order.clear();

        std::deque<DeviceId> queue;
        dist[s] = 0;
        sigma[s] = 1.0;
        queue.push_back(s);
        while (!queue.empty()) {
            DeviceId u = queue.front();
            queue.pop_front();
            order.push_back(u);
            for (const auto& nb : network.neighbors(u)) {
                DeviceId v = nb.id;
                if (!network.is_up(v)) continue;
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
                if (dist[v] == dist[u] + 1) {
                    sigma[v] += sigma[u];
                    preds[v].push_back(u);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            DeviceId w = *it;
            double credit = delta[w] + ((is_target[w] && w != s) ? 1.0 : 0.0);
            for (DeviceId v : preds[w]) {
                delta[v] += sigma[v] / sigma[w] * credit;
            }
            if (w != s) score[w] += delta[w];
        }
    }

    // Contributing ordered pairs: |S| * |T| minus identical pairs.
    std::size_t identical = 0;
    for (DeviceId s : sources) {
        if (is_target[s]) ++identical;
    }
    const double pairs =
        static_cast<double>(sources.size()) * static_cast<double>(targets.size()) -
        static_cast<double>(identical);
    const double norm = pairs > 0.0 ? pairs : 1.0;

    CentralityMap map;
    for (DeviceId v = 0; v < n; ++v) {
        if (network.is_up(v)) map.values[v] = score[v] / norm;
    }
    return map;
}

CentralityMap betweenness_all(const FogNetwork& network) {
    auto all = network.up_devices();
    return betweenness_subset(network, all, all);
}

CentralityMap eigenvector_centrality(const FogNetwork& network,
                                     const EdgeWeightMap& edge_weights) {
    if (edge_weights.by_link.size() != network.link_count()) {
        throw Error(ErrorCode::InvalidArgument, "edge weight map size mismatch");
    }
    if (!network.up_subgraph_connected()) {
        throw Error(ErrorCode::Connectivity,
                    "eigenvector centrality requires a connected up subgraph");
    }
    for (double w : edge_weights.by_link) {
        if (w < 0.0) {
            throw Error(ErrorCode::InvalidArgument, "negative edge weight");
        }
    }

    const std::size_t n = network.device_count();
    auto up = network.up_devices();
    if (up.empty()) {
        throw Error(ErrorCode::InvalidArgument, "no up devices");
    }

    std::vector<double> x(n, 0.0), y(n, 0.0);
    for (DeviceId v : up) x[v] = 1.0 / static_cast<double>(up.size());

    constexpr double kTol = 1e-8;
    constexpr int kMaxIter = 1000;
    for (int iter = 1; iter <= kMaxIter; ++iter) {
        // y = (A + I) x with affinity 1 / (1 + w); the identity shift keeps
        // the iteration convergent on bipartite topologies.
        for (DeviceId v : up) y[v] = x[v];
        for (std::size_t li = 0; li < network.link_count(); ++li) {
            const Link& l = network.link(li);
            if (!network.is_up(l.a) || !network.is_up(l.b)) continue;
            double affinity = 1.0 / (1.0 + edge_weights.by_link[li]);
            y[l.a] += affinity * x[l.b];
            y[l.b] += affinity * x[l.a];
        }
        double maxval = 0.0;
        for (DeviceId v : up) maxval = std::max(maxval, y[v]);
        double diff = 0.0;
        for (DeviceId v : up) {
            y[v] /= maxval;
            diff = std::max(diff, std::abs(y[v] - x[v]));
        }
        x.swap(y);
        if (diff < kTol) {
            CentralityMap map;
            for (DeviceId v : up) map.values[v] = x[v];
            return map;
        }
    }
    throw Error(ErrorCode::Numeric,
                fmt::format("eigenvector centrality did not converge within {} "
                            "iterations",
                            kMaxIter));
}

namespace {

// Dense per-node adjacency (weights) over a compacted index space; the
// Kernighan-Lin inner loop needs O(1) weight lookups between candidates.
struct KlGraph {
    std::vector<DeviceId> ids;             // compact index -> device id
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;

    double weight_between(std::uint32_t u, std::uint32_t v) const {
        for (auto [nb, w] : adj[u]) {
            if (nb == v) return w;
        }
        return 0.0;
    }
};

}  // namespace

Bipartition kernighan_lin_bipartition(const FogNetwork& network,
                                      const EdgeWeightMap& edge_weights,
                                      std::uint64_t rng_seed) {
    if (edge_weights.by_link.size() != network.link_count()) {
        throw Error(ErrorCode::InvalidArgument, "edge weight map size mismatch");
    }
    auto up = network.up_devices();
    if (up.size() < 2) {
        throw Error(ErrorCode::InvalidArgument,
                    "bipartition requires at least 2 up devices");
    }

    KlGraph g;
    g.ids = up;
    std::vector<std::uint32_t> compact(network.device_count(), 0);
    for (std::uint32_t i = 0; i < up.size(); ++i) compact[up[i]] = i;

    const std::uint32_t real_n = static_cast<std::uint32_t>(up.size());
    const bool odd = (real_n % 2) != 0;
    const std::uint32_t n = real_n + (odd ? 1u : 0u);  // dummy pads odd sizes
    g.adj.assign(n, {});
    for (std::size_t li = 0; li < network.link_count(); ++li) {
        const Link& l = network.link(li);
        if (!network.is_up(l.a) || !network.is_up(l.b)) continue;
        double w = edge_weights.by_link[li];
        g.adj[compact[l.a]].emplace_back(compact[l.b], w);
        g.adj[compact[l.b]].emplace_back(compact[l.a], w);
    }

    // Seeded random balanced initial split.
    std::vector<std::uint32_t> perm(n);
    for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
    Rng rng(rng_seed);
    rng.shuffle(perm);
    std::vector<std::uint8_t> in_a(n, 0);
    for (std::uint32_t i = 0; i < n / 2; ++i) in_a[perm[i]] = 1;

    std::vector<double> dval(n, 0.0);
    auto recompute_d = [&]() {
        for (std::uint32_t v = 0; v < n; ++v) {
            double external = 0.0, internal = 0.0;
            for (auto [nb, w] : g.adj[v]) {
                if (in_a[nb] == in_a[v]) {
                    internal += w;
                } else {
                    external += w;
                }
            }
            dval[v] = external - internal;
        }
    };

    std::vector<std::uint8_t> locked(n, 0);
    std::vector<std::uint32_t> side_a, side_b, swap_a, swap_b;
    std::vector<double> gains;

    for (;;) {
        recompute_d();
        std::fill(locked.begin(), locked.end(), 0);
        swap_a.clear();
        swap_b.clear();
        gains.clear();

        for (std::uint32_t step = 0; step < n / 2; ++step) {
            side_a.clear();
            side_b.clear();
            for (std::uint32_t v = 0; v < n; ++v) {
                if (locked[v]) continue;
                (in_a[v] ? side_a : side_b).push_back(v);
            }
            auto by_d = [&](std::uint32_t x, std::uint32_t y) {
                if (dval[x] != dval[y]) return dval[x] > dval[y];
                return x < y;
            };
            std::sort(side_a.begin(), side_a.end(), by_d);
            std::sort(side_b.begin(), side_b.end(), by_d);

            // Scan in decreasing D order; with non-negative weights the
            // gain is bounded by D[a] + D[b], so the scan can stop early.
            double best_gain = -std::numeric_limits<double>::infinity();
            std::uint32_t best_a = 0, best_b = 0;
            bool found = false;
            for (std::uint32_t a : side_a) {
                if (found && dval[a] + dval[side_b.front()] <= best_gain) break;
                for (std::uint32_t b : side_b) {
                    double bound = dval[a] + dval[b];
                    if (found && bound <= best_gain) break;
                    double gain = bound - 2.0 * g.weight_between(a, b);
                    if (!found || gain > best_gain) {
                        found = true;
                        best_gain = gain;
                        best_a = a;
                        best_b = b;
                    }
                }
            }
            locked[best_a] = locked[best_b] = 1;
            swap_a.push_back(best_a);
            swap_b.push_back(best_b);
            gains.push_back(best_gain);
            for (auto [nb, w] : g.adj[best_a]) {
                if (locked[nb]) continue;
                dval[nb] += (in_a[nb] ? 2.0 : -2.0) * w;
            }
            for (auto [nb, w] : g.adj[best_b]) {
                if (locked[nb]) continue;
                dval[nb] += (in_a[nb] ? -2.0 : 2.0) * w;
            }
        }

        double best_prefix = 0.0, running = 0.0;
        std::size_t best_k = 0;
        for (std::size_t k = 0; k < gains.size(); ++k) {
            running += gains[k];
            if (running > best_prefix + 1e-12) {
                best_prefix = running;
                best_k = k + 1;
            }
        }
        if (best_k == 0) break;
        for (std::size_t k = 0; k < best_k; ++k) {
            in_a[swap_a[k]] = 0;
            in_a[swap_b[k]] = 1;
        }
    }

    Bipartition out;
    for (std::uint32_t v = 0; v < real_n; ++v) {
        (in_a[v] ? out.part_a : out.part_b).push_back(g.ids[v]);
    }
    std::sort(out.part_a.begin(), out.part_a.end());
    std::sort(out.part_b.begin(), out.part_b.end());
    if (out.part_a.empty() || out.part_b.empty()) {
        // Dummy padding can leave a side empty only for n == 2.
        out.part_a = {up[0]};
        out.part_b = {up[1]};
    }
    if (out.part_b[0] < out.part_a[0]) std::swap(out.part_a, out.part_b);
    return out;
}

double cut_cost(const FogNetwork& network, const EdgeWeightMap& edge_weights,
                const Bipartition& partition) {
    std::vector<std::uint8_t> in_a(network.device_count(), 0);
    for (DeviceId v : partition.part_a) in_a[v] = 1;
    double cost = 0.0;
    for (std::size_t li = 0; li < network.link_count(); ++li) {
        const Link& l = network.link(li);
        if (!network.is_up(l.a) || !network.is_up(l.b)) continue;
        if (in_a[l.a] != in_a[l.b]) cost += edge_weights.by_link[li];
    }
    return cost;
}

}  // namespace fogrep
