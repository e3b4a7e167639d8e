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

#include "ltesim/nodes.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "ltesim/errors.hpp"

namespace ltesim {

std::string_view keyword(NodeType type) noexcept {
    switch (type) {
        case NodeType::UE: return "ue";
        case NodeType::ENB: return "enb";
        case NodeType::SGW_MME: return "sgw_mme";
        case NodeType::PDN_GW: return "pdn_gw";
    }
    return "?";
}

std::optional<NodeType> nodeTypeFromKeyword(std::string_view word) noexcept {
    for (NodeType t : {NodeType::UE, NodeType::ENB, NodeType::SGW_MME, NodeType::PDN_GW}) {
        if (keyword(t) == word) {
            return t;
        }
    }
    return std::nullopt;
}

LayerSpec LayerSpec::fromTag(std::string_view tag) {
    std::string module = "lte_";
    for (char c : tag) {
        module += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return LayerSpec{std::string(tag), std::move(module)};
}

std::vector<LayerSpec> defaultChain(NodeType type) {
    std::vector<std::string_view> tags;
    switch (type) {
        case NodeType::UE: tags = {"PHY", "MAC", "RLC", "PDCP", "RRC", "NAS"}; break;
        case NodeType::ENB: tags = {"PHY", "MAC", "RLC", "PDCP", "RRC", "GTP"}; break;
        case NodeType::SGW_MME: tags = {"S1", "GTP", "S5"}; break;
        case NodeType::PDN_GW: tags = {"S5", "GTP", "IP"}; break;
    }
    std::vector<LayerSpec> chain;
    chain.reserve(tags.size());
    for (auto t : tags) {
        chain.push_back(LayerSpec::fromTag(t));
    }
    return chain;
}

NodeBlueprint defaultBlueprint(NodeType type) {
    return NodeBlueprint{type, defaultChain(type)};
}

void checkChain(NodeType type, const std::vector<LayerSpec>& chain) {
    const std::string kind(keyword(type));
    if (chain.empty()) {
        throw InvalidChain(kind + " chain must contain at least one layer");
    }
    if (type == NodeType::UE && chain != defaultChain(NodeType::UE)) {
        throw InvalidChain("the ue chain is fixed to PHY MAC RLC PDCP RRC NAS");
    }
    if (type == NodeType::ENB && chain.front().tag != "PHY") {
        throw InvalidChain("enb chain must start with PHY");
    }
    std::set<std::string> seen;
    for (const auto& layer : chain) {
        const bool wellFormed =
            !layer.tag.empty() && std::all_of(layer.tag.begin(), layer.tag.end(), [](char c) {
                return std::isupper(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c));
            }) && std::isupper(static_cast<unsigned char>(layer.tag.front()));
        if (!wellFormed) {
            throw InvalidChain("layer tag '" + layer.tag + "' must be upper-case alphanumeric");
        }
        if (!seen.insert(layer.tag).second) {
            throw InvalidChain(kind + " chain repeats layer " + layer.tag);
        }
    }
}

namespace {

std::string_view compoundType(NodeType type) {
    switch (type) {
        case NodeType::UE: return "LteUe";
        case NodeType::ENB: return "LteEnb";
        case NodeType::SGW_MME: return "LteSgwMme";
        case NodeType::PDN_GW: return "LtePdnGw";
    }
    return "?";
}

void wireTwoWay(Gate& lowerOut, Gate& upperIn, Gate& upperOut, Gate& lowerIn, ChannelSpec channel) {
    connect(lowerOut, upperIn, channel);
    connect(upperOut, lowerIn, channel);
}

}  // namespace

NodeModule::NodeModule(std::string name, NodeType type)
    : Module(std::move(name), std::string(compoundType(type))), type_(type) {}

NodeModule& buildNode(Module& parent, std::string name, const NodeBlueprint& blueprint,
                      const std::optional<GeneratorConfig>& generator) {
    const NodeType type = blueprint.nodeType;
    checkChain(type, blueprint.layerChain);
    if (generator && type != NodeType::UE) {
        throw InvalidChain("generators attach only to a UE");
    }

    auto node = std::make_unique<NodeModule>(std::move(name), type);
    NodeModule& n = *node;
    const auto& chain = blueprint.layerChain;
    const bool hasRadio = type == NodeType::UE || type == NodeType::ENB;

    // Build layers bottom to top, then add children in the order a reader
    // would draw the node: UE top-down, the rest bottom-up.
    std::vector<std::unique_ptr<LayerModule>> built;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const bool isTop = i + 1 == chain.size();
        std::unique_ptr<LayerModule> layer;
        if (type == NodeType::UE && chain[i].tag == "NAS") {
            layer = std::make_unique<NasLayer>();
        } else if (hasRadio && i == 0) {
            layer = std::make_unique<PhyLayer>();
        } else if (type == NodeType::PDN_GW && isTop) {
            layer = std::make_unique<ReflectorLayer>(chain[i].moduleName, chain[i].tag);
        } else {
            layer = std::make_unique<LayerModule>(chain[i].moduleName, chain[i].tag);
        }
        if (i > 0) {
            layer->setLowerTag(chain[i - 1].tag);
        }
        if (!isTop) {
            layer->setUpperTag(chain[i + 1].tag);
        }
        built.push_back(std::move(layer));
    }

    std::unique_ptr<Generator> gen;
    if (generator) {
        gen = std::make_unique<Generator>(*generator);
    }
    std::unique_ptr<RadioInterface> radio;
    if (hasRadio) {
        radio = std::make_unique<RadioInterface>();
    }

    auto adopt = [&n](std::unique_ptr<LayerModule>& layer) {
        LayerModule& ref = static_cast<LayerModule&>(n.addChild(std::move(layer)));
        n.layers_.push_back(&ref);
    };
    if (type == NodeType::UE) {
        if (gen) {
            n.generator_ = &static_cast<Generator&>(n.addChild(std::move(gen)));
        }
        std::vector<LayerModule*> topDown;
        for (auto it = built.rbegin(); it != built.rend(); ++it) {
            topDown.push_back(&static_cast<LayerModule&>(n.addChild(std::move(*it))));
        }
        n.layers_.assign(topDown.rbegin(), topDown.rend());
        n.radio_ = &static_cast<RadioInterface&>(n.addChild(std::move(radio)));
    } else {
        if (radio) {
            n.radio_ = &static_cast<RadioInterface&>(n.addChild(std::move(radio)));
        }
        for (auto& layer : built) {
            adopt(layer);
        }
    }

    for (std::size_t i = 0; i + 1 < n.layers_.size(); ++i) {
        LayerModule& lower = *n.layers_[i];
        LayerModule& upper = *n.layers_[i + 1];
        wireTwoWay(lower.gate(kOutToUpper), upper.gate(kInFromLower), upper.gate(kOutToLower),
                   lower.gate(kInFromUpper), {});
    }
    if (n.radio_ != nullptr) {
        connect(n.radio_->gate(kOutToUpper), n.layers_.front()->gate(kInFromLower));
        n.phy_ = static_cast<PhyLayer*>(n.layers_.front());
    }
    if (type == NodeType::UE) {
        n.nas_ = static_cast<NasLayer*>(n.layers_.back());
        if (n.generator_ != nullptr) {
            wireTwoWay(n.nas_->gate(kOutToUpper), n.generator_->gate(kInFromLower),
                       n.generator_->gate(kOutToLower), n.nas_->gate(kInFromUpper), {});
        }
    }

    return static_cast<NodeModule&>(parent.addChild(std::move(node)));
}

NodeModule& buildUe(Module& parent, std::string name, const std::optional<GeneratorConfig>& generator) {
    return buildNode(parent, std::move(name), defaultBlueprint(NodeType::UE), generator);
}

NodeModule& buildEnb(Module& parent, std::string name, std::vector<LayerSpec> chain) {
    return buildNode(parent, std::move(name), NodeBlueprint{NodeType::ENB, std::move(chain)});
}

NodeModule& buildSgwMme(Module& parent, std::string name, std::vector<LayerSpec> chain) {
    return buildNode(parent, std::move(name), NodeBlueprint{NodeType::SGW_MME, std::move(chain)});
}

NodeModule& buildPdnGw(Module& parent, std::string name, std::vector<LayerSpec> chain) {
    return buildNode(parent, std::move(name), NodeBlueprint{NodeType::PDN_GW, std::move(chain)});
}

void attachUe(NodeModule& ue, NodeModule& enb, SimTime airDelay) {
    if (ue.nodeType() != NodeType::UE || enb.nodeType() != NodeType::ENB) {
        throw InvalidChain("attach needs a ue and an enb");
    }
    ue.phy()->setDefaultPeer(*enb.radio(), airDelay);
    enb.phy()->addPeerRoute(ue, *ue.radio(), airDelay);
}

void linkEnbToCore(NodeModule& enb, NodeModule& core, ChannelSpec channel) {
    if (enb.nodeType() != NodeType::ENB || core.nodeType() != NodeType::SGW_MME) {
        throw InvalidChain("an enb links to the sgw_mme");
    }
    LayerModule& enbTop = enb.top();
    LayerModule& coreBottom = core.bottom();
    const std::string idx = "[" + std::to_string(coreBottom.addLowerFanOut()) + "]";
    wireTwoWay(enbTop.gate(kOutToUpper), coreBottom.gate(std::string(kInFromLower) + idx),
               coreBottom.gate(std::string(kOutToLower) + idx), enbTop.gate(kInFromUpper), channel);
    enbTop.setUpperTag(coreBottom.tag());
    coreBottom.setLowerTag(enbTop.tag());
}

void linkCoreToPdn(NodeModule& core, NodeModule& pdn, ChannelSpec channel) {
    if (core.nodeType() != NodeType::SGW_MME || pdn.nodeType() != NodeType::PDN_GW) {
        throw InvalidChain("the sgw_mme links to the pdn_gw");
    }
    LayerModule& coreTop = core.top();
    LayerModule& pdnBottom = pdn.bottom();
    wireTwoWay(coreTop.gate(kOutToUpper), pdnBottom.gate(kInFromLower), pdnBottom.gate(kOutToLower),
               coreTop.gate(kInFromUpper), channel);
    coreTop.setUpperTag(pdnBottom.tag());
    pdnBottom.setLowerTag(coreTop.tag());
}

}  // namespace ltesim
