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
#include <string>
#include <string_view>

#include "ltesim/sim_time.hpp"

namespace ltesim {

class Module;

enum class MessageKind : std::uint8_t { ControlMessage, Packet };

using MessageId = std::uint64_t;

/**
 * The unit that flows between modules.
 *
 * Identity and kind are fixed at creation. Layers rewrite the name as the
 * message moves through the stack. Instances are created by
 * Simulation::newMessage, which owns id allocation.
 */
class SimMessage {
public:
    SimMessage(MessageId id, std::string name, MessageKind kind, std::uint64_t byteLength, SimTime creationTime)
        : id_(id), name_(std::move(name)), kind_(kind), byteLength_(byteLength), creationTime_(creationTime) {}

    MessageId id() const noexcept { return id_; }
    const std::string& name() const noexcept { return name_; }
    void setName(std::string name) { name_ = std::move(name); }
    MessageKind kind() const noexcept { return kind_; }
    bool isPacket() const noexcept { return kind_ == MessageKind::Packet; }
    std::uint64_t byteLength() const noexcept { return byteLength_; }
    SimTime creationTime() const noexcept { return creationTime_; }

    // Node that originated the message; downlink routing keys on it.
    const Module* origin() const noexcept { return origin_; }
    void setOrigin(const Module* node) noexcept { origin_ = node; }

private:
    MessageId id_;
    std::string name_;
    MessageKind kind_;
    std::uint64_t byteLength_;
    SimTime creationTime_;
    const Module* origin_ = nullptr;
};

/// Trace label for a kind: "cMessage" or "cPacket".
constexpr std::string_view kindLabel(MessageKind kind) noexcept {
    return kind == MessageKind::Packet ? "cPacket" : "cMessage";
}

}  // namespace ltesim
