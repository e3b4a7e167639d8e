/*
 * Copyright 2026 The ltesim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ltesim/trace.hpp"

#include <istream>
#include <ostream>
#include <unordered_map>

#include <json.hpp>

#include "ltesim/errors.hpp"

namespace ltesim {

using ordered_json = nlohmann::ordered_json;

std::string formatEventLine(const EventRecord& rec) {
    std::string line;
    line.reserve(96 + rec.modulePath.size());
    line += "** Event #";
    line += std::to_string(rec.eventNo);
    line += " T=";
    line += rec.time.toSecondsString();
    line += ' ';
    line += rec.modulePath;
    line += " (";
    line += rec.moduleType;
    line += ", id=";
    line += std::to_string(rec.moduleId);
    line += "), on `";
    line += rec.msgName;
    line += "' (";
    line += kindLabel(rec.msgKind);
    line += ", id=";
    line += std::to_string(rec.msgId);
    line += ')';
    return line;
}

std::string toStructuredLine(const EventRecord& rec) {
    ordered_json j;
    j["event_no"] = rec.eventNo;
    j["t_ns"] = rec.time.nanoseconds();
    j["path"] = rec.modulePath;
    j["type"] = rec.moduleType;
    j["module_id"] = rec.moduleId;
    j["msg_name"] = rec.msgName;
    j["msg_kind"] = kindLabel(rec.msgKind);
    j["msg_id"] = rec.msgId;
    return j.dump();
}

EventRecord parseStructuredLine(std::string_view line, std::size_t lineNo) {
    ordered_json j = ordered_json::parse(line.begin(), line.end(), nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw MalformedTrace(lineNo, "not a JSON object");
    }
    auto field = [&](const char* key) -> const ordered_json& {
        auto it = j.find(key);
        if (it == j.end()) {
            throw MalformedTrace(lineNo, std::string("missing field '") + key + "'");
        }
        return *it;
    };
    auto number = [&](const char* key) {
        const auto& v = field(key);
        if (!v.is_number_unsigned()) {
            throw MalformedTrace(lineNo, std::string("field '") + key + "' must be a non-negative integer");
        }
        return v.get<std::uint64_t>();
    };
    auto text = [&](const char* key) {
        const auto& v = field(key);
        if (!v.is_string()) {
            throw MalformedTrace(lineNo, std::string("field '") + key + "' must be a string");
        }
        return v.get<std::string>();
    };

    EventRecord rec;
    rec.eventNo = number("event_no");
    rec.time = SimTime::fromNanoseconds(number("t_ns"));
    rec.modulePath = text("path");
    rec.moduleType = text("type");
    rec.moduleId = static_cast<Module::Id>(number("module_id"));
    rec.msgName = text("msg_name");
    const std::string kind = text("msg_kind");
    if (kind == kindLabel(MessageKind::ControlMessage)) {
        rec.msgKind = MessageKind::ControlMessage;
    } else if (kind == kindLabel(MessageKind::Packet)) {
        rec.msgKind = MessageKind::Packet;
    } else {
        throw MalformedTrace(lineNo, "unknown msg_kind '" + kind + "'");
    }
    rec.msgId = number("msg_id");
    return rec;
}

std::vector<EventRecord> readStructuredTrace(std::istream& in) {
    std::vector<EventRecord> out;
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        out.push_back(parseStructuredLine(line, lineNo));
    }
    return out;
}

void PaperTraceSink::record(const EventRecord& rec) {
    out_ << formatEventLine(rec) << '\n';
}

void StructuredTraceSink::record(const EventRecord& rec) {
    out_ << toStructuredLine(rec) << '\n';
}

std::vector<std::string> expectedRoundTripPath(const NetworkSpec& spec, const ResolvedTopology& topo,
                                               std::string_view ueInstance) {
    const std::string ue(ueInstance);
    const std::string& enb = topo.ueToEnb.at(ue);
    const std::string net = spec.networkName + ".";
    const auto& ueChain = topo.chains.at(NodeType::UE);
    const auto& enbChain = topo.chains.at(NodeType::ENB);
    const auto& sgwChain = topo.chains.at(NodeType::SGW_MME);
    const auto& pdnChain = topo.chains.at(NodeType::PDN_GW);

    std::vector<std::string> path;
    auto at = [&](const std::string& node, std::string_view module) { path.push_back(net + node + "." + std::string(module)); };
    auto up = [&](const std::string& node, const std::vector<LayerSpec>& chain, std::size_t from) {
        for (std::size_t i = from; i < chain.size(); ++i) {
            at(node, chain[i].moduleName);
        }
    };
    auto down = [&](const std::string& node, const std::vector<LayerSpec>& chain, std::size_t skipTop) {
        for (std::size_t i = chain.size() - skipTop; i-- > 0;) {
            at(node, chain[i].moduleName);
        }
    };

    down(ue, ueChain, 0);
    at(enb, "lte_radio");
    up(enb, enbChain, 0);
    up(topo.sgwMme, sgwChain, 0);
    up(topo.pdnGw, pdnChain, 0);
    down(topo.pdnGw, pdnChain, 1);
    down(topo.sgwMme, sgwChain, 0);
    down(enb, enbChain, 0);
    at(ue, "lte_radio");
    up(ue, ueChain, 0);
    at(ue, "generator");
    return path;
}

namespace {

std::string parentPath(const std::string& path) {
    const auto dot = path.rfind('.');
    return dot == std::string::npos ? std::string() : path.substr(0, dot);
}

}  // namespace

Metrics summarize(std::span<const EventRecord> records, const NetworkSpec& spec, double wallSeconds) {
    Metrics m;
    m.totalEvents = records.size();
    if (wallSeconds > 0.0) {
        m.eventsPerWallSecond = static_cast<double>(records.size()) / wallSeconds;
    }

    // Group by message, keeping first-appearance order for stable reporting.
    std::vector<MessageId> order;
    std::unordered_map<MessageId, std::vector<const EventRecord*>> byMsg;
    for (const auto& r : records) {
        auto [it, inserted] = byMsg.try_emplace(r.msgId);
        if (inserted) {
            order.push_back(r.msgId);
        }
        it->second.push_back(&r);
    }

    const ResolvedTopology topo = resolve(spec);
    const std::string netPrefix = spec.networkName + ".";
    std::map<std::string, std::vector<std::string>> oracleCache;

    for (MessageId id : order) {
        const auto& hops = byMsg[id];
        if (hops.front()->moduleType == "Generator") {
            m.timerEvents += hops.size();
            continue;
        }
        m.perMessageHopCount[id] = hops.size();

        const std::string nodePath = parentPath(hops.front()->modulePath);
        const std::string ue = nodePath.rfind(netPrefix, 0) == 0 ? nodePath.substr(netPrefix.size()) : nodePath;
        if (!topo.ueToEnb.count(ue)) {
            m.pathMismatches.push_back({id, "message starts at '" + hops.front()->modulePath + "', not at an attached ue"});
            continue;
        }
        auto [cached, fresh] = oracleCache.try_emplace(ue);
        if (fresh) {
            cached->second = expectedRoundTripPath(spec, topo, ue);
        }
        const auto& expected = cached->second;

        std::size_t i = 0;
        while (i < hops.size() && i < expected.size() && hops[i]->modulePath == expected[i]) {
            ++i;
        }
        if (i < hops.size()) {
            std::string detail = "hop " + std::to_string(i + 1) + " at '" + hops[i]->modulePath + "', expected ";
            detail += i < expected.size() ? "'" + expected[i] + "'" : "end of round trip";
            m.pathMismatches.push_back({id, std::move(detail)});
            continue;
        }
        if (hops.size() == expected.size()) {
            ++m.roundTrips;
            m.perMessageRtt[id] = hops.back()->time - hops.front()->time;
        } else if (hops.size() >= 2 && hops.back()->moduleType == "lte_nas" &&
                   hops[hops.size() - 2]->moduleType == "lte_rrc") {
            ++m.drops[nodePath];
        } else {
            ++m.inFlight;
        }
    }
    return m;
}

Metrics summarize(std::istream& structuredTrace, const NetworkSpec& spec, double wallSeconds) {
    const std::vector<EventRecord> records = readStructuredTrace(structuredTrace);
    return summarize(std::span<const EventRecord>(records), spec, wallSeconds);
}

std::string metricsToJson(const Metrics& m) {
    ordered_json j;
    j["total_events"] = m.totalEvents;
    j["round_trips"] = m.roundTrips;
    j["timer_events"] = m.timerEvents;
    j["in_flight"] = m.inFlight;
    j["events_per_wall_second"] = m.eventsPerWallSecond;
    j["drops"] = ordered_json::object();
    for (const auto& [node, n] : m.drops) {
        j["drops"][node] = n;
    }
    j["path_mismatches"] = ordered_json::array();
    for (const auto& pm : m.pathMismatches) {
        j["path_mismatches"].push_back({{"msg_id", pm.msgId}, {"detail", pm.detail}});
    }
    j["per_message"] = ordered_json::array();
    for (const auto& [id, hops] : m.perMessageHopCount) {
        ordered_json row = {{"msg_id", id}, {"hops", hops}};
        if (auto it = m.perMessageRtt.find(id); it != m.perMessageRtt.end()) {
            row["rtt_ns"] = it->second.nanoseconds();
        }
        j["per_message"].push_back(std::move(row));
    }
    return j.dump(2);
}

}  // namespace ltesim
