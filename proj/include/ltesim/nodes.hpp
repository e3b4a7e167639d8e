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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ltesim/generator.hpp"
#include "ltesim/layers.hpp"
#include "ltesim/module.hpp"

namespace ltesim {

enum class NodeType : std::uint8_t { UE, ENB, SGW_MME, PDN_GW };

/// Config keyword for a node type: "ue", "enb", "sgw_mme", "pdn_gw".
std::string_view keyword(NodeType type) noexcept;
std::optional<NodeType> nodeTypeFromKeyword(std::string_view word) noexcept;

struct LayerSpec {
    std::string tag;         // "RRC"
    std::string moduleName;  // "lte_rrc"

    static LayerSpec fromTag(std::string_view tag);

    friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

/// Protocol layers of a node type, bottom to top. Radio interface and
/// generator are not part of the chain.
///
///   UE      PHY MAC RLC PDCP RRC NAS
///   ENB     PHY MAC RLC PDCP RRC GTP
///   SGW_MME S1 GTP S5
///   PDN_GW  S5 GTP IP      (IP turns traffic around)
std::vector<LayerSpec> defaultChain(NodeType type);

struct NodeBlueprint {
    NodeType nodeType = NodeType::UE;
    std::vector<LayerSpec> layerChain;  // bottom to top
};

NodeBlueprint defaultBlueprint(NodeType type);

/// Throws InvalidChain. UE chains cannot be changed; eNB chains must start
/// with PHY; tags are upper-case alphanumerics, unique within the chain.
void checkChain(NodeType type, const std::vector<LayerSpec>& chain);

/// Compound module for one network element.
class NodeModule final : public Module {
public:
    NodeModule(std::string name, NodeType type);

    NodeType nodeType() const noexcept { return type_; }

    /// Stack layers bottom to top.
    const std::vector<LayerModule*>& layers() const noexcept { return layers_; }
    LayerModule& bottom() const { return *layers_.front(); }
    LayerModule& top() const { return *layers_.back(); }

    RadioInterface* radio() const noexcept { return radio_; }
    Generator* generator() const noexcept { return generator_; }
    NasLayer* nas() const noexcept { return nas_; }
    PhyLayer* phy() const noexcept { return phy_; }

private:
    friend NodeModule& buildNode(Module&, std::string, const NodeBlueprint&, const std::optional<GeneratorConfig>&);

    NodeType type_;
    std::vector<LayerModule*> layers_;
    RadioInterface* radio_ = nullptr;
    Generator* generator_ = nullptr;
    NasLayer* nas_ = nullptr;
    PhyLayer* phy_ = nullptr;
};

/// Instantiates a node under parent and wires its stack with zero-delay
/// two-way channels. Throws DuplicateName or InvalidChain.
NodeModule& buildNode(Module& parent, std::string name, const NodeBlueprint& blueprint,
                      const std::optional<GeneratorConfig>& generator = std::nullopt);

NodeModule& buildUe(Module& parent, std::string name, const std::optional<GeneratorConfig>& generator = std::nullopt);
NodeModule& buildEnb(Module& parent, std::string name, std::vector<LayerSpec> chain = defaultChain(NodeType::ENB));
NodeModule& buildSgwMme(Module& parent, std::string name,
                        std::vector<LayerSpec> chain = defaultChain(NodeType::SGW_MME));
NodeModule& buildPdnGw(Module& parent, std::string name, std::vector<LayerSpec> chain = defaultChain(NodeType::PDN_GW));

/// Radio attachment: the UE's PHY transmits to the eNB radio, and the eNB's
/// PHY transmits this UE's downlink to the UE radio.
void attachUe(NodeModule& ue, NodeModule& enb, SimTime airDelay = {});

/// Two-way link from the top of an eNB to the bottom of the S-GW/MME.
void linkEnbToCore(NodeModule& enb, NodeModule& core, ChannelSpec channel = {});

/// Two-way link from the top of the S-GW/MME to the bottom of the PDN-GW.
void linkCoreToPdn(NodeModule& core, NodeModule& pdn, ChannelSpec channel = {});

}  // namespace ltesim
