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
#include <deque>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ltesim/message.hpp"
#include "ltesim/sim_time.hpp"

namespace ltesim {

class Simulation;
class Module;

enum class GateDirection : std::uint8_t { In, Out };

struct ChannelSpec {
    SimTime delay{};
};

/**
 * A named, directional attachment point on a module.
 *
 * An Out gate feeds at most one In gate. An In gate may be fed by any number
 * of Out gates, or by Simulation::sendDirect without any wiring at all.
 */
class Gate {
public:
    Gate(Module& owner, std::string name, GateDirection direction)
        : owner_(&owner), name_(std::move(name)), direction_(direction) {}

    Gate(const Gate&) = delete;
    Gate& operator=(const Gate&) = delete;

    Module& owner() const noexcept { return *owner_; }
    const std::string& name() const noexcept { return name_; }
    /// Name without a trailing "[i]" vector index.
    std::string_view baseName() const noexcept;
    GateDirection direction() const noexcept { return direction_; }

    Gate* peer() const noexcept { return peer_; }
    bool connected() const noexcept { return peer_ != nullptr; }
    SimTime delay() const noexcept { return channel_.delay; }

private:
    friend void connect(Gate& out, Gate& in, ChannelSpec channel);

    Module* owner_;
    std::string name_;
    GateDirection direction_;
    Gate* peer_ = nullptr;  // set only on Out gates
    ChannelSpec channel_;
};

/// Wires out -> in. A two-way channel is two calls with the same spec.
void connect(Gate& out, Gate& in, ChannelSpec channel = {});

/**
 * Node of the module tree.
 *
 * Simple modules override handleMessage; compound modules only hold
 * children. Ids are zero until assignIds runs.
 */
class Module {
public:
    using Id = std::uint32_t;

    Module(std::string name, std::string typeName) : name_(std::move(name)), typeName_(std::move(typeName)) {}
    virtual ~Module() = default;

    Module(const Module&) = delete;
    Module& operator=(const Module&) = delete;

    const std::string& name() const noexcept { return name_; }
    const std::string& typeName() const noexcept { return typeName_; }
    Id id() const noexcept { return id_; }
    Module* parent() const noexcept { return parent_; }

    /// Dot-joined names from the network root. Throws DetachedModule when
    /// the topmost ancestor is not a Network.
    const std::string& fullPath() const;

    Gate& addGate(std::string name, GateDirection direction);
    Gate* findGate(std::string_view name) noexcept;
    const Gate* findGate(std::string_view name) const noexcept;
    /// Throws UnknownGate.
    Gate& gate(std::string_view name);
    const std::deque<Gate>& gates() const noexcept { return gates_; }

    /// Throws DuplicateName if a sibling already uses child->name().
    Module& addChild(std::unique_ptr<Module> child);

    template <typename T, typename... Args>
    T& emplaceChild(Args&&... args) {
        return static_cast<T&>(addChild(std::make_unique<T>(std::forward<Args>(args)...)));
    }

    Module* findChild(std::string_view name) const noexcept;
    const std::vector<std::unique_ptr<Module>>& children() const noexcept { return children_; }

    bool wiringFrozen() const noexcept { return frozen_; }

    virtual bool isNetworkRoot() const noexcept { return false; }

    /// Runs once, before the first event, in tree pre-order.
    virtual void initialize(Simulation& sim);

    /// Event handler. arrival is null for self-messages.
    virtual void handleMessage(Simulation& sim, std::unique_ptr<SimMessage> msg, const Gate* arrival);

private:
    friend void assignIds(Module& root);
    friend void freezeWiring(Module& root);

    std::string name_;
    std::string typeName_;
    Id id_ = 0;
    Module* parent_ = nullptr;
    std::deque<Gate> gates_;  // deque keeps Gate addresses stable
    std::vector<std::unique_ptr<Module>> children_;
    bool frozen_ = false;
    mutable std::string path_;
};

/// Root of a module tree; its name heads every full path.
class Network final : public Module {
public:
    explicit Network(std::string name) : Module(std::move(name), "Network") {}
    bool isNetworkRoot() const noexcept override { return true; }
};

/// Depth-first pre-order numbering starting at 1 for the root.
void assignIds(Module& root);

/// After this, connect() on any gate in the tree throws WiringFrozen.
void freezeWiring(Module& root);

/// Calls fn on every module of the tree in pre-order.
template <typename Fn>
void forEachModule(Module& root, Fn&& fn) {
    fn(root);
    for (const auto& child : root.children()) {
        forEachModule(*child, fn);
    }
}

}  // namespace ltesim
