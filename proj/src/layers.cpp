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

#include "ltesim/layers.hpp"

#include "ltesim/errors.hpp"

namespace ltesim {

std::string labelFor(std::string_view tag, MessageKind kind) {
    std::string label(tag);
    label += kind == MessageKind::Packet ? "Pck" : "Msg";
    return label;
}

void relabel(SimMessage& msg, std::string_view destinationTag) {
    msg.setName(labelFor(destinationTag, msg.kind()));
}

LayerModule::LayerModule(std::string moduleName, std::string tag)
    : Module(moduleName, moduleName), tag_(std::move(tag)) {
    addGate(std::string(kInFromUpper), GateDirection::In);
    addGate(std::string(kOutToLower), GateDirection::Out);
    addGate(std::string(kInFromLower), GateDirection::In);
    addGate(std::string(kOutToUpper), GateDirection::Out);
}

std::size_t LayerModule::addLowerFanOut() {
    const std::size_t index = fanOut_++;
    const std::string suffix = "[" + std::to_string(index) + "]";
    addGate(std::string(kInFromLower) + suffix, GateDirection::In);
    addGate(std::string(kOutToLower) + suffix, GateDirection::Out);
    return index;
}

void LayerModule::handleMessage(Simulation& sim, std::unique_ptr<SimMessage> msg, const Gate* arrival) {
    if (arrival == nullptr) {
        throw UnknownArrivalGate("layer '" + name() + "' got self-message '" + msg->name() + "'");
    }
    const std::string_view base = arrival->baseName();
    if (base == kInFromUpper) {
        handleFromUpper(sim, std::move(msg));
    } else if (base == kInFromLower) {
        if (base.size() != arrival->name().size()) {
            std::string reply(kOutToLower);
            reply += arrival->name().substr(base.size());
            downlinkRoutes_.insert_or_assign(msg->origin(), std::move(reply));
        }
        handleFromLower(sim, std::move(msg), *arrival);
    } else {
        throw UnknownArrivalGate("layer '" + name() + "' has no handling for gate '" + arrival->name() + "'");
    }
}

void LayerModule::handleFromUpper(Simulation& sim, std::unique_ptr<SimMessage> msg) {
    relabel(*msg, lowerTag_);
    sendDown(sim, std::move(msg));
}

void LayerModule::handleFromLower(Simulation& sim, std::unique_ptr<SimMessage> msg, const Gate&) {
    relabel(*msg, upperTag_);
    sendUp(sim, std::move(msg));
}

void LayerModule::sendDown(Simulation& sim, std::unique_ptr<SimMessage> msg) {
    if (fanOut_ == 0) {
        sim.send(*this, std::move(msg), kOutToLower);
        return;
    }
    auto it = downlinkRoutes_.find(msg->origin());
    if (it == downlinkRoutes_.end()) {
        throw NoRoute("layer '" + name() + "' has no downlink route for message '" + msg->name() + "'");
    }
    sim.send(*this, std::move(msg), it->second);
}

void LayerModule::sendUp(Simulation& sim, std::unique_ptr<SimMessage> msg) {
    sim.send(*this, std::move(msg), kOutToUpper);
}

NasLayer::NasLayer() : LayerModule("lte_nas", "NAS") {
    setUpperTag(std::string(kGeneratorTag));
}

bool NasLayer::hasGenerator() const {
    const Gate* up = findGate(kOutToUpper);
    return up != nullptr && up->connected();
}

void NasLayer::handleFromLower(Simulation& sim, std::unique_ptr<SimMessage> msg, const Gate& arrival) {
    if (!hasGenerator()) {
        ++drops_;
        return;
    }
    LayerModule::handleFromLower(sim, std::move(msg), arrival);
}

PhyLayer::PhyLayer() : LayerModule("lte_phy", "PHY") {
    setLowerTag("PHY");
}

void PhyLayer::setDefaultPeer(Module& radio, SimTime airDelay) {
    defaultPeer_ = AirPeer{&radio, airDelay};
}

void PhyLayer::addPeerRoute(const Module& originNode, Module& radio, SimTime airDelay) {
    routes_.insert_or_assign(&originNode, AirPeer{&radio, airDelay});
}

void PhyLayer::handleFromUpper(Simulation& sim, std::unique_ptr<SimMessage> msg) {
    const AirPeer* peer = defaultPeer_ ? &*defaultPeer_ : nullptr;
    if (peer == nullptr) {
        if (auto it = routes_.find(msg->origin()); it != routes_.end()) {
            peer = &it->second;
        }
    }
    if (peer == nullptr) {
        throw NoRadioPeer("'" + fullPath() + "' has no radio peer for message '" + msg->name() + "'");
    }
    relabel(*msg, lowerTag());
    sim.sendDirect(*this, std::move(msg), *peer->radio, kRadioIn, peer->delay);
}

RadioInterface::RadioInterface() : Module("lte_radio", "lte_radio") {
    addGate(std::string(kRadioIn), GateDirection::In);
    addGate(std::string(kOutToUpper), GateDirection::Out);
}

void RadioInterface::handleMessage(Simulation& sim, std::unique_ptr<SimMessage> msg, const Gate* arrival) {
    if (arrival == nullptr || arrival->name() != kRadioIn) {
        throw UnknownArrivalGate("radio '" + name() + "' only accepts traffic on " + std::string(kRadioIn));
    }
    sim.send(*this, std::move(msg), kOutToUpper);
}

ReflectorLayer::ReflectorLayer(std::string moduleName, std::string tag)
    : LayerModule(std::move(moduleName), std::move(tag)) {}

void ReflectorLayer::handleFromLower(Simulation& sim, std::unique_ptr<SimMessage> msg, const Gate&) {
    relabel(*msg, lowerTag());
    sendDown(sim, std::move(msg));
}

}  // namespace ltesim
