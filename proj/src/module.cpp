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

#include "ltesim/module.hpp"

#include <vector>

#include "ltesim/errors.hpp"

namespace ltesim {

std::string_view Gate::baseName() const noexcept {
    std::string_view n = name_;
    if (!n.empty() && n.back() == ']') {
        if (auto pos = n.rfind('['); pos != std::string_view::npos) {
            return n.substr(0, pos);
        }
    }
    return n;
}

void connect(Gate& out, Gate& in, ChannelSpec channel) {
    if (out.owner().wiringFrozen() || in.owner().wiringFrozen()) {
        throw WiringFrozen("cannot connect " + out.name() + " -> " + in.name() + " after the run has started");
    }
    if (out.direction() != GateDirection::Out || in.direction() != GateDirection::In) {
        throw DirectionMismatch("connect needs an Out gate then an In gate, got " + out.name() + " -> " + in.name());
    }
    if (out.connected()) {
        throw GateAlreadyConnected("gate " + out.name() + " of " + out.owner().name() + " is already connected");
    }
    out.peer_ = &in;
    out.channel_ = channel;
}

const std::string& Module::fullPath() const {
    if (!path_.empty()) {
        return path_;
    }
    std::vector<const Module*> chain;
    for (const Module* m = this; m != nullptr; m = m->parent_) {
        chain.push_back(m);
    }
    if (!chain.back()->isNetworkRoot()) {
        throw DetachedModule("module '" + name_ + "' is not attached to a network");
    }
    std::string path;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        if (!path.empty()) {
            path += '.';
        }
        path += (*it)->name_;
    }
    path_ = std::move(path);
    return path_;
}

Gate& Module::addGate(std::string name, GateDirection direction) {
    if (findGate(name) != nullptr) {
        throw DuplicateName("module '" + name_ + "' already has a gate named '" + name + "'");
    }
    return gates_.emplace_back(*this, std::move(name), direction);
}

Gate* Module::findGate(std::string_view name) noexcept {
    for (auto& g : gates_) {
        if (g.name() == name) {
            return &g;
        }
    }
    return nullptr;
}

const Gate* Module::findGate(std::string_view name) const noexcept {
    return const_cast<Module*>(this)->findGate(name);
}

Gate& Module::gate(std::string_view name) {
    if (Gate* g = findGate(name)) {
        return *g;
    }
    throw UnknownGate("module '" + name_ + "' has no gate '" + std::string(name) + "'");
}

Module& Module::addChild(std::unique_ptr<Module> child) {
    if (findChild(child->name()) != nullptr) {
        throw DuplicateName("'" + name_ + "' already contains a module named '" + child->name() + "'");
    }
    if (frozen_) {
        throw WiringFrozen("cannot add modules after the run has started");
    }
    child->parent_ = this;
    children_.push_back(std::move(child));
    return *children_.back();
}

Module* Module::findChild(std::string_view name) const noexcept {
    for (const auto& c : children_) {
        if (c->name() == name) {
            return c.get();
        }
    }
    return nullptr;
}

void Module::initialize(Simulation&) {}

void Module::handleMessage(Simulation&, std::unique_ptr<SimMessage> msg, const Gate*) {
    throw SimError("module '" + name_ + "' (" + typeName_ + ") does not handle messages; got '" + msg->name() + "'");
}

void assignIds(Module& root) {
    Module::Id next = 1;
    forEachModule(root, [&next](Module& m) { m.id_ = next++; });
}

void freezeWiring(Module& root) {
    forEachModule(root, [](Module& m) { m.frozen_ = true; });
}

}  // namespace ltesim
