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
#include <unordered_map>

#include "ltesim/module.hpp"
#include "ltesim/simulation.hpp"

namespace ltesim {

// Gate names shared by every stack layer.
inline constexpr std::string_view kInFromUpper = "inFromUpperLayer";
inline constexpr std::string_view kOutToLower = "outToLowerLayer";
inline constexpr std::string_view kInFromLower = "inFromLowerLayer";
inline constexpr std::string_view kOutToUpper = "outToUpperLayer";
inline constexpr std::string_view kRadioIn = "radioIn";

/// Tag used when a message is handed to a traffic generator.
inline constexpr std::string_view kGeneratorTag = "Gen";

/// tag + "Msg" for control messages, tag + "Pck" for packets.
std::string labelFor(std::string_view tag, MessageKind kind);

/// Renames msg after the layer it is heading to. Identity is untouched.
void relabel(SimMessage& msg, std::string_view destinationTag);

/**
 * Pass-through protocol layer.
 *
 * Forwards downward traffic on outToLowerLayer and upward traffic on
 * outToUpperLayer, renaming each message after the layer it is sent to.
 * The layer adds no delay.
 *
 * A layer whose lower side fans out to several peers (gate vector
 * "inFromLowerLayer[i]" / "outToLowerLayer[i]") remembers which index each
 * originating node's uplink arrived on and sends that node's downlink back
 * through the same index.
 */
class LayerModule : public Module {
public:
    /// moduleName doubles as the type name ("lte_rrc").
    LayerModule(std::string moduleName, std::string tag);

    const std::string& tag() const noexcept { return tag_; }
    const std::string& upperTag() const noexcept { return upperTag_; }
    const std::string& lowerTag() const noexcept { return lowerTag_; }
    void setUpperTag(std::string tag) { upperTag_ = std::move(tag); }
    void setLowerTag(std::string tag) { lowerTag_ = std::move(tag); }

    /// Adds the pair "inFromLowerLayer[i]" / "outToLowerLayer[i]" and returns i.
    std::size_t addLowerFanOut();

    void handleMessage(Simulation& sim, std::unique_ptr<SimMessage> msg, const Gate* arrival) override;

protected:
    virtual void handleFromUpper(Simulation& sim, std::unique_ptr<SimMessage> msg);
    virtual void handleFromLower(Simulation& sim, std::unique_ptr<SimMessage> msg, const Gate& arrival);

    void sendDown(Simulation& sim, std::unique_ptr<SimMessage> msg);
    void sendUp(Simulation& sim, std::unique_ptr<SimMessage> msg);

private:
    std::string tag_;
    std::string upperTag_;
    std::string lowerTag_;
    std::size_t fanOut_ = 0;
    std::unordered_map<const Module*, std::string> downlinkRoutes_;
};

/// Top of the UE stack: hands returning traffic to the generator, or drops it.
class NasLayer final : public LayerModule {
public:
    NasLayer();

    bool hasGenerator() const;
    std::uint64_t dropCount() const noexcept { return drops_; }

protected:
    void handleFromLower(Simulation& sim, std::unique_ptr<SimMessage> msg, const Gate& arrival) override;

private:
    std::uint64_t drops_ = 0;
};

/**
 * Physical layer. Downward traffic leaves over the air via sendDirect to
 * the radio interface of a peer node; upward traffic comes from the local
 * radio interface through inFromLowerLayer.
 */
class PhyLayer final : public LayerModule {
public:
    PhyLayer();

    /// Peer for every message (the eNB a UE is attached to).
    void setDefaultPeer(Module& radio, SimTime airDelay);
    /// Peer for messages originated by originNode (the UEs an eNB serves).
    void addPeerRoute(const Module& originNode, Module& radio, SimTime airDelay);

protected:
    void handleFromUpper(Simulation& sim, std::unique_ptr<SimMessage> msg) override;

private:
    struct AirPeer {
        Module* radio;
        SimTime delay;
    };
    std::optional<AirPeer> defaultPeer_;
    std::unordered_map<const Module*, AirPeer> routes_;
};

/// Receives over-the-air traffic on radioIn and passes it up to PHY unrenamed.
class RadioInterface final : public Module {
public:
    RadioInterface();

    void handleMessage(Simulation& sim, std::unique_ptr<SimMessage> msg, const Gate* arrival) override;
};

/// Highest PDN-GW layer: turns uplink traffic around within the same event.
class ReflectorLayer final : public LayerModule {
public:
    ReflectorLayer(std::string moduleName, std::string tag);

protected:
    void handleFromLower(Simulation& sim, std::unique_ptr<SimMessage> msg, const Gate& arrival) override;
};

}  // namespace ltesim
