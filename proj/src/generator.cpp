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

#include "ltesim/generator.hpp"

#include "ltesim/errors.hpp"
#include "ltesim/layers.hpp"

namespace ltesim {

Generator::Generator(GeneratorConfig config, std::string name)
    : Module(std::move(name), "Generator"), config_(config) {
    if (config_.period.isZero()) {
        throw SimError("generator period must be positive");
    }
    if (config_.payloadKind == MessageKind::ControlMessage && config_.payloadBytes != 0) {
        throw InvalidMessage("generator control-message payload must have zero length");
    }
    addGate(std::string(kOutToLower), GateDirection::Out);
    addGate(std::string(kInFromLower), GateDirection::In);
}

void Generator::initialize(Simulation& sim) {
    timer_ = sim.newMessage(kTimerName, MessageKind::ControlMessage);
    timerId_ = timer_->id();
    if (config_.startTime == sim.now()) {
        emit(sim);
    } else {
        sim.scheduleSelf(*this, std::move(timer_), config_.startTime);
    }
}

void Generator::handleMessage(Simulation& sim, std::unique_ptr<SimMessage> msg, const Gate* arrival) {
    if (arrival == nullptr && msg->id() == timerId_) {
        timer_ = std::move(msg);
        emit(sim);
        return;
    }
    if (arrival != nullptr && arrival->name() == kInFromLower) {
        onReturn(sim, std::move(msg));
        return;
    }
    throw UnknownArrivalGate("generator '" + name() + "' got unexpected message '" + msg->name() + "'");
}

void Generator::emit(Simulation& sim) {
    auto msg = sim.newMessage(labelFor("NAS", config_.payloadKind), config_.payloadKind, config_.payloadBytes);
    msg->setOrigin(parent());
    ++stats_.emitted;
    sim.send(*this, std::move(msg), kOutToLower);
}

void Generator::onReturn(Simulation& sim, std::unique_ptr<SimMessage> msg) {
    ++stats_.returned;
    msg.reset();
    ++stats_.discarded;
    if (!timer_) {
        throw SimError("generator '" + name() + "' got a return while its timer is pending");
    }
    sim.scheduleSelf(*this, std::move(timer_), sim.now() + config_.period);
}

}  // namespace ltesim
