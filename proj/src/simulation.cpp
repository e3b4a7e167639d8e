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

#include "ltesim/simulation.hpp"

#include <chrono>

#include "ltesim/errors.hpp"

namespace ltesim {

std::string_view stopReasonName(StopReason reason) noexcept {
    switch (reason) {
        case StopReason::FesEmpty: return "FesEmpty";
        case StopReason::TimeLimit: return "TimeLimit";
        case StopReason::EventLimit: return "EventLimit";
    }
    return "?";
}

std::unique_ptr<SimMessage> Simulation::newMessage(std::string name, MessageKind kind, std::uint64_t byteLength) {
    if (kind == MessageKind::ControlMessage && byteLength != 0) {
        throw InvalidMessage("control message '" + name + "' must have zero byte length");
    }
    return std::make_unique<SimMessage>(++lastMessageId_, std::move(name), kind, byteLength, now_);
}

void Simulation::schedule(Module& target, const Gate* arrival, std::unique_ptr<SimMessage> msg, SimTime at) {
    ScheduledEvent ev;
    ev.fireTime = at;
    ev.target = &target;
    ev.arrivalGate = arrival;
    ev.payload = std::move(msg);
    fes_.schedule(std::move(ev), now_);
}

void Simulation::send(Module& from, std::unique_ptr<SimMessage> msg, std::string_view outGate) {
    Gate* g = from.findGate(outGate);
    if (g == nullptr || g->direction() != GateDirection::Out) {
        throw UnknownGate("module '" + from.name() + "' has no output gate '" + std::string(outGate) + "'");
    }
    if (!g->connected()) {
        throw UnconnectedGate("gate '" + g->name() + "' of '" + from.name() + "' is not connected");
    }
    Gate* in = g->peer();
    schedule(in->owner(), in, std::move(msg), now_ + g->delay());
}

void Simulation::sendDirect(Module&, std::unique_ptr<SimMessage> msg, Module& target, std::string_view inGate,
                            SimTime delay) {
    const Gate* g = target.findGate(inGate);
    if (g == nullptr || g->direction() != GateDirection::In) {
        throw UnknownTargetGate("module '" + target.name() + "' has no input gate '" + std::string(inGate) + "'");
    }
    schedule(target, g, std::move(msg), now_ + delay);
}

void Simulation::scheduleSelf(Module& self, std::unique_ptr<SimMessage> msg, SimTime at) {
    schedule(self, nullptr, std::move(msg), at);
}

void Simulation::initializeModules() {
    if (root_.id() == 0) {
        assignIds(root_);
    }
    freezeWiring(root_);
    initialized_ = true;
    forEachModule(root_, [this](Module& m) { m.initialize(*this); });
}

RunSummary Simulation::run(const RunLimits& limits, TraceSink* sink) {
    const auto wallStart = std::chrono::steady_clock::now();
    if (!initialized_) {
        initializeModules();
    }

    RunSummary summary;
    summary.seed = seed_;
    for (;;) {
        if (limits.eventLimit && summary.eventsExecuted >= *limits.eventLimit) {
            summary.stopReason = StopReason::EventLimit;
            break;
        }
        const std::optional<SimTime> next = fes_.nextTime();
        if (!next) {
            summary.stopReason = StopReason::FesEmpty;
            break;
        }
        if (*next >= limits.until) {
            summary.stopReason = StopReason::TimeLimit;
            break;
        }

        ScheduledEvent ev = *fes_.popNext();
        now_ = ev.fireTime;
        ++eventNo_;
        ++summary.eventsExecuted;

        Module& target = *ev.target;
        if (sink != nullptr) {
            sink->record(EventRecord{eventNo_, now_, target.fullPath(), target.typeName(), target.id(),
                                     ev.payload->name(), ev.payload->kind(), ev.payload->id()});
        }
        try {
            target.handleMessage(*this, std::move(ev.payload), ev.arrivalGate);
        } catch (const HandlerFailure&) {
            throw;
        } catch (const std::exception& e) {
            throw HandlerFailure(target.fullPath(), eventNo_, e.what());
        }
    }

    summary.finalTime = now_;
    summary.wallClockSeconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wallStart).count();
    return summary;
}

}  // namespace ltesim
