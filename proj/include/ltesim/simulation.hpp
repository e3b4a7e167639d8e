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
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "ltesim/event_set.hpp"
#include "ltesim/message.hpp"
#include "ltesim/module.hpp"
#include "ltesim/sim_time.hpp"

namespace ltesim {

/// One executed event, as observed by trace sinks.
struct EventRecord {
    std::uint64_t eventNo = 0;
    SimTime time;
    std::string modulePath;
    std::string moduleType;
    Module::Id moduleId = 0;
    std::string msgName;
    MessageKind msgKind = MessageKind::ControlMessage;
    MessageId msgId = 0;

    friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

class TraceSink {
public:
    virtual ~TraceSink() = default;
    virtual void record(const EventRecord& rec) = 0;
};

enum class StopReason : std::uint8_t { FesEmpty, TimeLimit, EventLimit };

std::string_view stopReasonName(StopReason reason) noexcept;

struct RunLimits {
    SimTime until = SimTime::max();  // exclusive
    std::optional<std::uint64_t> eventLimit;
};

struct RunSummary {
    std::uint64_t eventsExecuted = 0;
    SimTime finalTime;
    StopReason stopReason = StopReason::FesEmpty;
    double wallClockSeconds = 0.0;
    std::uint64_t seed = 0;
};

/**
 * Sequential event loop over one module tree.
 *
 * A Simulation is confined to a single thread; independent instances share
 * nothing and may run concurrently.
 */
class Simulation {
public:
    explicit Simulation(Module& root, std::uint64_t seed = 0) : root_(root), seed_(seed) {}

    Simulation(const Simulation&) = delete;
    Simulation& operator=(const Simulation&) = delete;

    SimTime now() const noexcept { return now_; }
    std::uint64_t seed() const noexcept { return seed_; }
    Module& root() const noexcept { return root_; }
    const FutureEventSet& events() const noexcept { return fes_; }

    /// Allocates the next message id. ControlMessages must have zero length.
    std::unique_ptr<SimMessage> newMessage(std::string name, MessageKind kind, std::uint64_t byteLength = 0);

    /// Sends through a wired Out gate; arrival at now + channel delay.
    void send(Module& from, std::unique_ptr<SimMessage> msg, std::string_view outGate);

    /// Delivers straight to an In gate of target, bypassing wiring.
    void sendDirect(Module& from, std::unique_ptr<SimMessage> msg, Module& target, std::string_view inGate,
                    SimTime delay);

    void scheduleSelf(Module& self, std::unique_ptr<SimMessage> msg, SimTime at);

    /// Initializes modules on the first call, then dispatches events with
    /// fireTime < limits.until. A later call resumes where this one stopped.
    RunSummary run(const RunLimits& limits, TraceSink* sink = nullptr);

private:
    void schedule(Module& target, const Gate* arrival, std::unique_ptr<SimMessage> msg, SimTime at);
    void initializeModules();

    Module& root_;
    std::uint64_t seed_;
    FutureEventSet fes_;
    SimTime now_;
    MessageId lastMessageId_ = 0;
    std::uint64_t eventNo_ = 0;
    bool initialized_ = false;
};

}  // namespace ltesim
