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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ltesim/netconfig.hpp"
#include "ltesim/simulation.hpp"

namespace ltesim {

/// ** Event #<n> T=<t> <path> (<type>, id=<mid>), on `<name>' (<kind>, id=<msgid>)
std::string formatEventLine(const EventRecord& rec);

/// One JSON object per line with fields in fixed order:
/// event_no, t_ns, path, type, module_id, msg_name, msg_kind, msg_id.
std::string toStructuredLine(const EventRecord& rec);

/// Throws MalformedTrace carrying lineNo.
EventRecord parseStructuredLine(std::string_view line, std::size_t lineNo);

/// Reads a whole structured trace; blank lines are skipped.
std::vector<EventRecord> readStructuredTrace(std::istream& in);

/// Writes paper-format lines, LF-terminated.
class PaperTraceSink final : public TraceSink {
public:
    explicit PaperTraceSink(std::ostream& out) : out_(out) {}
    void record(const EventRecord& rec) override;

private:
    std::ostream& out_;
};

class StructuredTraceSink final : public TraceSink {
public:
    explicit StructuredTraceSink(std::ostream& out) : out_(out) {}
    void record(const EventRecord& rec) override;

private:
    std::ostream& out_;
};

/// Keeps every record in memory.
class RecordingSink final : public TraceSink {
public:
    void record(const EventRecord& rec) override { records_.push_back(rec); }
    const std::vector<EventRecord>& records() const noexcept { return records_; }

private:
    std::vector<EventRecord> records_;
};

/// Forwards each record to several sinks.
class TeeSink final : public TraceSink {
public:
    void add(TraceSink& sink) { sinks_.push_back(&sink); }
    bool empty() const noexcept { return sinks_.empty(); }
    void record(const EventRecord& rec) override {
        for (TraceSink* s : sinks_) {
            s->record(rec);
        }
    }

private:
    std::vector<TraceSink*> sinks_;
};

/**
 * Module paths one generator message visits on a complete round trip from
 * the named UE, derived from the topology alone: down the UE stack, over the
 * air, up through the eNB, S-GW/MME and PDN-GW to the turnaround layer, then
 * the same way back to the generator.
 */
std::vector<std::string> expectedRoundTripPath(const NetworkSpec& spec, const ResolvedTopology& topo,
                                               std::string_view ueInstance);

struct PathMismatch {
    MessageId msgId = 0;
    std::string detail;
};

struct Metrics {
    std::uint64_t totalEvents = 0;
    std::uint64_t roundTrips = 0;
    std::uint64_t timerEvents = 0;  // generator self-timer dispatches
    std::map<MessageId, std::uint64_t> perMessageHopCount;
    std::map<MessageId, SimTime> perMessageRtt;  // completed round trips only
    std::map<std::string, std::uint64_t> drops;  // by UE node path
    std::uint64_t inFlight = 0;                  // messages neither returned nor dropped
    double eventsPerWallSecond = 0.0;
    std::vector<PathMismatch> pathMismatches;
};

/**
 * Post-run analysis of a trace. Every traffic message's visited path is
 * compared with expectedRoundTripPath; messages still in flight at the end
 * must match a prefix of it.
 */
Metrics summarize(std::span<const EventRecord> records, const NetworkSpec& spec, double wallSeconds = 0.0);
Metrics summarize(std::istream& structuredTrace, const NetworkSpec& spec, double wallSeconds = 0.0);

/// Metrics as a JSON document with per-message maps keyed by message id.
std::string metricsToJson(const Metrics& m);

}  // namespace ltesim
