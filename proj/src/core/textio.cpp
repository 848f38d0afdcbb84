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

#include "core/textio.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace fogrep {

std::string format_double(double value) { return fmt::format("{}", value); }

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

double parse_number(const std::string& tok, std::size_t line_no) {
    try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::Parse,
                    fmt::format("line {}: bad number '{}'", line_no, tok));
    }
}

std::int64_t parse_int(const std::string& tok, std::size_t line_no) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw Error(ErrorCode::Parse,
                    fmt::format("line {}: bad integer '{}'", line_no, tok));
    }
    return v;
}

StorageUnits parse_capacity(const std::string& tok, std::size_t line_no) {
    if (tok == "inf") return kUnboundedStorage;
    return parse_int(tok, line_no);
}

std::string format_capacity(StorageUnits cap) {
    if (cap == kUnboundedStorage) return "inf";
    return fmt::format("{}", cap);
}

// Iterates non-empty, non-comment lines.
struct LineReader {
    std::istringstream in;
    std::size_t line_no = 0;

    explicit LineReader(const std::string& text) : in(text) {}

    bool next(std::string& line) {
        while (std::getline(in, line)) {
            ++line_no;
            std::size_t start = line.find_first_not_of(" \t\r");
            if (start == std::string::npos) continue;
            if (line[start] == '#') continue;
            return true;
        }
        return false;
    }
};

void append_network(std::string& out, const FogNetwork& network) {
    out += fmt::format("devices {}\n", network.device_count());
    for (DeviceId i = 0; i < network.device_count(); ++i) {
        const auto& d = network.device(i);
        out += fmt::format("dev {} {} {}\n", i, device_role_name(d.role),
                           format_capacity(d.storage_capacity));
    }
    for (const Link& l : network.links()) {
        out += fmt::format("link {} {} {} {}\n", l.a, l.b,
                           format_double(l.attrs.propagation_ms),
                           format_double(l.attrs.bandwidth_bytes_per_ms));
    }
}

}  // namespace

std::string format_network(const FogNetwork& network) {
    std::string out;
    append_network(out, network);
    return out;
}

namespace {

// Shared by the network and scenario parsers; `files` is null when file
// lines are not allowed.
FogNetwork parse_network_lines(LineReader& reader,
                               std::vector<FileSpec>* files) {
    std::string line;
    if (!reader.next(line)) {
        throw Error(ErrorCode::Parse, "empty input");
    }
    auto header = split_ws(line);
    if (header.size() != 2 || header[0] != "devices") {
        throw Error(ErrorCode::Parse,
                    fmt::format("line {}: expected 'devices <n>'", reader.line_no));
    }
    auto n = static_cast<std::size_t>(parse_int(header[1], reader.line_no));

    std::vector<DeviceAttrs> devices(n);
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<Link> links;

    while (reader.next(line)) {
        auto tok = split_ws(line);
        if (tok[0] == "dev") {
            if (tok.size() != 4) {
                throw Error(ErrorCode::Parse,
                            fmt::format("line {}: expected 'dev <id> <role> "
                                        "<capacity>'",
                                        reader.line_no));
            }
            auto id = static_cast<std::size_t>(parse_int(tok[1], reader.line_no));
            if (id >= n || seen[id]) {
                throw Error(ErrorCode::Parse,
                            fmt::format("line {}: bad or repeated device id {}",
                                        reader.line_no, id));
            }
            auto role = device_role_from_name(tok[2]);
            if (!role) {
                throw Error(ErrorCode::Parse,
                            fmt::format("line {}: unknown role '{}'",
                                        reader.line_no, tok[2]));
            }
            devices[id].role = *role;
            devices[id].storage_capacity = parse_capacity(tok[3], reader.line_no);
            seen[id] = 1;
        } else if (tok[0] == "link") {
            if (tok.size() != 5) {
                throw Error(ErrorCode::Parse,
                            fmt::format("line {}: expected 'link <u> <v> "
                                        "<prop_ms> <bw_bytes_per_ms>'",
                                        reader.line_no));
            }
            Link l;
            l.a = static_cast<DeviceId>(parse_int(tok[1], reader.line_no));
            l.b = static_cast<DeviceId>(parse_int(tok[2], reader.line_no));
            l.attrs.propagation_ms = parse_number(tok[3], reader.line_no);
            l.attrs.bandwidth_bytes_per_ms = parse_number(tok[4], reader.line_no);
            links.push_back(l);
        } else if (files != nullptr && tok[0] == "file") {
            // file <id> <req> <wrate> <wbytes> <rrate> <rbytes> gateways=...
            if (tok.size() != 8) {
                throw Error(ErrorCode::Parse,
                            fmt::format("line {}: malformed file line",
                                        reader.line_no));
            }
            FileSpec f;
            f.file_id =
                static_cast<std::uint32_t>(parse_int(tok[1], reader.line_no));
            f.storage_req = parse_int(tok[2], reader.line_no);
            f.write_rate_per_ms = parse_number(tok[3], reader.line_no);
            f.write_packet_bytes = parse_number(tok[4], reader.line_no);
            f.read_rate_per_ms = parse_number(tok[5], reader.line_no);
            f.read_packet_bytes = parse_number(tok[6], reader.line_no);
            const std::string prefix = "gateways=";
            if (tok[7].rfind(prefix, 0) != 0) {
                throw Error(ErrorCode::Parse,
                            fmt::format("line {}: expected gateways=<ids>",
                                        reader.line_no));
            }
            std::string ids = tok[7].substr(prefix.size());
            std::size_t pos = 0;
            while (pos < ids.size()) {
                std::size_t comma = ids.find(',', pos);
                if (comma == std::string::npos) comma = ids.size();
                f.sensor_gateways.push_back(static_cast<DeviceId>(
                    parse_int(ids.substr(pos, comma - pos), reader.line_no)));
                pos = comma + 1;
            }
            if (f.sensor_gateways.empty()) {
                throw Error(ErrorCode::Parse,
                            fmt::format("line {}: file without sensors",
                                        reader.line_no));
            }
            files->push_back(std::move(f));
        } else {
            throw Error(ErrorCode::Parse,
                        fmt::format("line {}: unknown directive '{}'",
                                    reader.line_no, tok[0]));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!seen[i]) {
            throw Error(ErrorCode::Parse,
                        fmt::format("device {} missing from input", i));
        }
    }
    return FogNetwork::build(std::move(devices), std::move(links));
}

}  // namespace

FogNetwork parse_network(const std::string& text) {
    LineReader reader(text);
    return parse_network_lines(reader, nullptr);
}

std::string format_scenario(const Scenario& scenario) {
    std::string out;
    out += fmt::format("seed {}\n", scenario.rng_seed);
    append_network(out, scenario.network);
    for (const FileSpec& f : scenario.files) {
        std::string gw;
        for (std::size_t i = 0; i < f.sensor_gateways.size(); ++i) {
            if (i) gw += ',';
            gw += fmt::format("{}", f.sensor_gateways[i]);
        }
        out += fmt::format("file {} {} {} {} {} {} gateways={}\n", f.file_id,
                           f.storage_req, format_double(f.write_rate_per_ms),
                           format_double(f.write_packet_bytes),
                           format_double(f.read_rate_per_ms),
                           format_double(f.read_packet_bytes), gw);
    }
    return out;
}

Scenario parse_scenario(const std::string& text) {
    LineReader reader(text);
    std::string line;
    if (!reader.next(line)) {
        throw Error(ErrorCode::Parse, "empty scenario");
    }
    auto tok = split_ws(line);
    if (tok.size() != 2 || tok[0] != "seed") {
        throw Error(ErrorCode::Parse, "scenario must start with 'seed <n>'");
    }
    Scenario scenario;
    scenario.rng_seed = static_cast<std::uint64_t>(parse_int(tok[1], 1));
    scenario.files.clear();
    scenario.network = parse_network_lines(reader, &scenario.files);

    std::sort(scenario.files.begin(), scenario.files.end(),
              [](const FileSpec& a, const FileSpec& b) {
                  return a.file_id < b.file_id;
              });
    for (std::uint32_t i = 0; i < scenario.files.size(); ++i) {
        if (scenario.files[i].file_id != i) {
            throw Error(ErrorCode::Parse, "file ids must be dense from 0");
        }
        for (DeviceId g : scenario.files[i].sensor_gateways) {
            if (!scenario.network.contains(g) ||
                scenario.network.device(g).role != DeviceRole::Gateway) {
                throw Error(ErrorCode::Parse,
                            fmt::format("file {}: device {} is not a gateway",
                                        i, g));
            }
        }
    }
    auto cloud = scenario.network.cloud();
    if (!cloud) {
        throw Error(ErrorCode::Parse, "scenario network has no cloud device");
    }
    scenario.consumer.consumer_device = *cloud;
    return scenario;
}

std::string format_placement(const PlacementResult& placement) {
    std::string out = fmt::format("policy {}\n", policy_name(placement.policy));
    for (std::uint32_t f = 0; f < placement.matrix.assignments.size(); ++f) {
        out += fmt::format("place {}", f);
        for (DeviceId d : placement.matrix.assignments[f]) {
            out += fmt::format(" {}", d);
        }
        out += '\n';
    }
    return out;
}

std::pair<PlacementMatrix, Policy> parse_placement(const std::string& text) {
    LineReader reader(text);
    std::string line;
    if (!reader.next(line)) {
        throw Error(ErrorCode::Parse, "empty placement");
    }
    auto tok = split_ws(line);
    if (tok.size() != 2 || tok[0] != "policy") {
        throw Error(ErrorCode::Parse, "placement must start with 'policy <name>'");
    }
    auto policy = policy_from_name(tok[1]);
    if (!policy) {
        throw Error(ErrorCode::Parse,
                    fmt::format("unknown policy '{}'", tok[1]));
    }

    std::vector<std::pair<std::uint32_t, std::vector<DeviceId>>> rows;
    while (reader.next(line)) {
        tok = split_ws(line);
        if (tok[0] != "place" || tok.size() < 3) {
            throw Error(ErrorCode::Parse,
                        fmt::format("line {}: expected 'place <file> <devs...>'",
                                    reader.line_no));
        }
        std::uint32_t file_id =
            static_cast<std::uint32_t>(parse_int(tok[1], reader.line_no));
        std::vector<DeviceId> devs;
        for (std::size_t i = 2; i < tok.size(); ++i) {
            devs.push_back(
                static_cast<DeviceId>(parse_int(tok[i], reader.line_no)));
        }
        rows.emplace_back(file_id, std::move(devs));
    }
    PlacementMatrix matrix;
    matrix.replicas_per_file = *policy == Policy::SingleFile ? 1 : 3;
    matrix.assignments.resize(rows.size());
    for (auto& [fid, devs] : rows) {
        if (fid >= rows.size()) {
            throw Error(ErrorCode::Parse, "placement file ids must be dense");
        }
        matrix.assignments[fid] = std::move(devs);
    }
    return {std::move(matrix), *policy};
}

std::string format_trace(const PlacementTrace& trace) {
    std::string out;
    for (const FileTrace& ft : trace.files) {
        out += fmt::format("trace file {}\n", ft.file_id);
        if (!ft.partition.part_a.empty() || !ft.partition.part_b.empty()) {
            auto join = [](const std::vector<DeviceId>& v) {
                std::string s;
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) s += ',';
                    s += fmt::format("{}", v[i]);
                }
                return s;
            };
            out += fmt::format("  partition a={} b={}\n", join(ft.partition.part_a),
                               join(ft.partition.part_b));
        }
        for (const TraceStep& step : ft.steps) {
            out += fmt::format("  replica {}{}{}\n", step.replica_index,
                               step.overflowed ? " overflow" : "",
                               step.partition_rule_relaxed ? " relaxed" : "");
            for (const TraceCandidate& c : step.candidates) {
                const char* verdict = c.chosen ? "chosen"
                                     : c.reject == RejectReason::Capacity
                                         ? "rejected-capacity"
                                     : c.reject == RejectReason::Duplicate
                                         ? "rejected-duplicate"
                                         : "rejected-partition";
                out += fmt::format("    device {} centrality {} free {} {}\n",
                                   c.device, format_double(c.centrality),
                                   format_capacity(c.free_capacity), verdict);
            }
        }
    }
    return out;
}

std::string format_config(const ExperimentConfig& c) {
    std::string out;
    out += fmt::format("devices={}\n", c.n_devices);
    out += fmt::format("files={}\n", c.n_files);
    out += fmt::format("netPrp.min={}\n", format_double(c.propagation_ms.min));
    out += fmt::format("netPrp.max={}\n", format_double(c.propagation_ms.max));
    out += fmt::format("netBdw.min={}\n",
                       format_double(c.bandwidth_bytes_per_ms.min));
    out += fmt::format("netBdw.max={}\n",
                       format_double(c.bandwidth_bytes_per_ms.max));
    out += fmt::format("datCap.min={}\n", c.device_capacity.min);
    out += fmt::format("datCap.max={}\n", c.device_capacity.max);
    out += fmt::format("datReq.min={}\n", c.file_storage.min);
    out += fmt::format("datReq.max={}\n", c.file_storage.max);
    out += fmt::format("readPacketSize.min={}\n",
                       format_double(c.read_packet_bytes.min));
    out += fmt::format("readPacketSize.max={}\n",
                       format_double(c.read_packet_bytes.max));
    out += fmt::format("writePacketSize.min={}\n",
                       format_double(c.write_packet_bytes.min));
    out += fmt::format("writePacketSize.max={}\n",
                       format_double(c.write_packet_bytes.max));
    out += fmt::format("writeRate.min={}\n",
                       format_double(c.write_rate_per_ms.min));
    out += fmt::format("writeRate.max={}\n",
                       format_double(c.write_rate_per_ms.max));
    out += fmt::format("readRate.min={}\n", format_double(c.read_rate_per_ms.min));
    out += fmt::format("readRate.max={}\n", format_double(c.read_rate_per_ms.max));
    out += fmt::format("gtwPercentage={}\n", format_double(c.gateway_fraction));
    out += fmt::format("snsPopularity={}\n",
                       format_double(c.sensor_popularity_max));
    out += fmt::format("replicationFactor={}\n", c.replication_factor);
    out += fmt::format("baAttach={}\n", c.ba_attach);
    out += fmt::format("cloudUplinks={}\n", c.cloud_uplinks);
    out += fmt::format("repeats={}\n", c.repeats);
    out += fmt::format("failureFraction={}\n", format_double(c.failure_fraction));
    out += fmt::format("failureMasks={}\n", c.failure_masks);
    out += fmt::format("seed={}\n", c.rng_seed);
    return out;
}

void config_set(ExperimentConfig& c, const std::string& key,
                const std::string& value) {
    auto num = [&]() { return parse_number(value, 0); };
    auto integer = [&]() { return parse_int(value, 0); };

    if (key == "devices") c.n_devices = static_cast<std::uint32_t>(integer());
    else if (key == "files") c.n_files = static_cast<std::uint32_t>(integer());
    else if (key == "netPrp.min") c.propagation_ms.min = num();
    else if (key == "netPrp.max") c.propagation_ms.max = num();
    else if (key == "netBdw.min") c.bandwidth_bytes_per_ms.min = num();
    else if (key == "netBdw.max") c.bandwidth_bytes_per_ms.max = num();
    else if (key == "datCap.min") c.device_capacity.min = integer();
    else if (key == "datCap.max") c.device_capacity.max = integer();
    else if (key == "datReq.min") c.file_storage.min = integer();
    else if (key == "datReq.max") c.file_storage.max = integer();
    else if (key == "readPacketSize.min") c.read_packet_bytes.min = num();
    else if (key == "readPacketSize.max") c.read_packet_bytes.max = num();
    else if (key == "writePacketSize.min") c.write_packet_bytes.min = num();
    else if (key == "writePacketSize.max") c.write_packet_bytes.max = num();
    else if (key == "writeRate.min") c.write_rate_per_ms.min = num();
    else if (key == "writeRate.max") c.write_rate_per_ms.max = num();
    else if (key == "readRate.min") c.read_rate_per_ms.min = num();
    else if (key == "readRate.max") c.read_rate_per_ms.max = num();
    else if (key == "gtwPercentage") c.gateway_fraction = num();
    else if (key == "snsPopularity") c.sensor_popularity_max = num();
    else if (key == "replicationFactor")
        c.replication_factor = static_cast<std::uint32_t>(integer());
    else if (key == "baAttach") c.ba_attach = static_cast<std::uint32_t>(integer());
    else if (key == "cloudUplinks")
        c.cloud_uplinks = static_cast<std::uint32_t>(integer());
    else if (key == "repeats") c.repeats = static_cast<std::uint32_t>(integer());
    else if (key == "failureFraction") c.failure_fraction = num();
    else if (key == "failureMasks")
        c.failure_masks = static_cast<std::uint32_t>(integer());
    else if (key == "seed") c.rng_seed = static_cast<std::uint64_t>(integer());
    else {
        throw Error(ErrorCode::Parse, fmt::format("unknown config key '{}'", key));
    }
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig config;
    LineReader reader(text);
    std::string line;
    while (reader.next(line)) {
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::Parse,
                        fmt::format("line {}: expected key=value", reader.line_no));
        }
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        auto trim = [](std::string& s) {
            std::size_t a = s.find_first_not_of(" \t\r");
            std::size_t b = s.find_last_not_of(" \t\r");
            s = (a == std::string::npos) ? "" : s.substr(a, b - a + 1);
        };
        trim(key);
        trim(value);
        config_set(config, key, value);
    }
    return config;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, fmt::format("cannot open '{}'", path));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::Io, fmt::format("cannot write '{}'", path));
    }
    out << content;
    if (!out) {
        throw Error(ErrorCode::Io, fmt::format("write to '{}' failed", path));
    }
}

}  // namespace fogrep
