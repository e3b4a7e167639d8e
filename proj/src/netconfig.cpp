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

#include "ltesim/netconfig.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <variant>

#include "ltesim/errors.hpp"

namespace ltesim {

std::string formatDiagnostic(const Diagnostic& d, std::string_view origin) {
    std::ostringstream os;
    os << origin << ':' << d.line << ':' << d.column << ": "
       << (d.severity == Severity::Error ? "error" : "warning") << ": " << d.message;
    return os.str();
}

bool hasErrors(const std::vector<Diagnostic>& diags) noexcept {
    return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string selectorText(const Selector& sel) {
    switch (sel.form) {
        case Selector::Form::Bare: return sel.name;
        case Selector::Form::Index: return sel.name + "[" + std::to_string(sel.first) + "]";
        case Selector::Form::Range:
            return sel.name + "[" + std::to_string(sel.first) + ".." + std::to_string(sel.last) + "]";
        case Selector::Form::All: return sel.name + "[*]";
    }
    return sel.name;
}

std::string formatDuration(SimTime d) {
    const std::uint64_t ns = d.nanoseconds();
    if (ns != 0) {
        for (auto [unit, suffix] : {std::pair{TimeUnit::Seconds, "s"}, std::pair{TimeUnit::Milliseconds, "ms"},
                                    std::pair{TimeUnit::Microseconds, "us"}}) {
            if (ns % nanosecondsPer(unit) == 0) {
                return std::to_string(ns / nanosecondsPer(unit)) + suffix;
            }
        }
    }
    return std::to_string(ns) + "ns";
}

std::optional<SimTime> parseDuration(std::string_view text) {
    std::size_t digits = 0;
    while (digits < text.size() && text[digits] >= '0' && text[digits] <= '9') {
        ++digits;
    }
    if (digits == 0 || digits > 19) {
        return std::nullopt;
    }
    const std::uint64_t value = std::stoull(std::string(text.substr(0, digits)));
    const std::string_view unit = text.substr(digits);
    for (auto [u, suffix] : {std::pair{TimeUnit::Nanoseconds, "ns"}, std::pair{TimeUnit::Microseconds, "us"},
                             std::pair{TimeUnit::Milliseconds, "ms"}, std::pair{TimeUnit::Seconds, "s"}}) {
        if (unit == suffix) {
            try {
                return SimTime::fromUnits(value, u);
            } catch (const SimTimeOverflow&) {
                return std::nullopt;
            }
        }
    }
    return std::nullopt;
}

std::string printNetwork(const NetworkSpec& spec) {
    std::ostringstream os;
    os << "network " << spec.networkName << " {\n";
    for (const auto& n : spec.nodes) {
        os << "  " << keyword(n.kind) << ' ' << n.name;
        if (n.count) {
            os << '[' << *n.count << ']';
        }
        os << ";\n";
    }
    for (const auto& a : spec.attachments) {
        os << "  attach " << selectorText(a.ue) << " -> " << selectorText(a.enb);
        if (a.airDelay) {
            os << " delay " << formatDuration(*a.airDelay);
        }
        os << ";\n";
    }
    for (const auto& l : spec.links) {
        os << "  link " << selectorText(l.from) << " -> " << selectorText(l.to);
        if (l.delay) {
            os << " delay " << formatDuration(*l.delay);
        }
        os << ";\n";
    }
    for (const auto& g : spec.generators) {
        os << "  generator on " << selectorText(g.ue) << " { period " << formatDuration(g.config.period) << "; start "
           << formatDuration(g.config.startTime) << "; payload ";
        if (g.config.payloadKind == MessageKind::Packet) {
            os << "packet " << g.config.payloadBytes;
        } else {
            os << "message";
        }
        os << "; }\n";
    }
    for (const auto& c : spec.chains) {
        os << "  chain " << keyword(c.kind) << " { ";
        for (std::size_t i = 0; i < c.tags.size(); ++i) {
            os << (i ? ", " : "") << c.tags[i];
        }
        os << " };\n";
    }
    if (spec.until) {
        os << "  run until " << formatDuration(*spec.until) << ";\n";
    }
    if (spec.seed) {
        os << "  seed " << *spec.seed << ";\n";
    }
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Selector resolution

namespace {

const NodeDecl* findDecl(const NetworkSpec& spec, std::string_view name) {
    for (const auto& n : spec.nodes) {
        if (n.name == name) {
            return &n;
        }
    }
    return nullptr;
}

std::string instanceName(const NodeDecl& d, std::uint64_t index) {
    return d.count ? d.name + "[" + std::to_string(index) + "]" : d.name;
}

struct Resolved {
    const NodeDecl* decl = nullptr;
    std::vector<std::string> instances;
};

// Either the resolved instances or a message explaining why not.
std::variant<Resolved, std::string> resolveSelector(const NetworkSpec& spec, const Selector& sel) {
    const NodeDecl* d = findDecl(spec, sel.name);
    if (d == nullptr) {
        return "unknown node '" + sel.name + "'";
    }
    Resolved r{d, {}};
    if (sel.form == Selector::Form::Bare || sel.form == Selector::Form::All) {
        if (sel.form == Selector::Form::All && !d->count) {
            return "'" + sel.name + "' is not a node array";
        }
        const std::uint64_t n = d->count.value_or(1);
        for (std::uint64_t i = 0; i < n; ++i) {
            r.instances.push_back(instanceName(*d, i));
        }
        return r;
    }
    if (!d->count) {
        return "'" + sel.name + "' is not a node array";
    }
    const std::uint64_t last = sel.form == Selector::Form::Range ? sel.last : sel.first;
    if (last >= *d->count) {
        const std::string range =
            *d->count == 0 ? std::string("none") : "0.." + std::to_string(*d->count - 1);
        return "dangling selector '" + selectorText(sel) + "': '" + sel.name + "' has elements " + range;
    }
    for (std::uint64_t i = sel.first; i <= last; ++i) {
        r.instances.push_back(instanceName(*d, i));
    }
    return r;
}

class Validator {
public:
    explicit Validator(const NetworkSpec& spec) : spec_(spec) {}

    std::vector<Diagnostic> run() {
        nodes();
        attachments();
        links();
        generators();
        chains();
        if (!spec_.until) {
            error(spec_.loc, "missing 'run until' statement");
        } else if (spec_.until->isZero()) {
            error(spec_.loc, "'run until' must be positive");
        }
        std::stable_sort(diags_.begin(), diags_.end(), [](const Diagnostic& a, const Diagnostic& b) {
            return std::tie(a.line, a.column) < std::tie(b.line, b.column);
        });
        return std::move(diags_);
    }

private:
    void error(SourceLoc loc, std::string msg) {
        diags_.push_back(Diagnostic{Severity::Error, loc.line, loc.column, std::move(msg)});
    }

    // Resolves and checks the node kind; returns empty on failure.
    std::vector<std::string> select(const Selector& sel, NodeType kind, std::string_view role) {
        auto r = resolveSelector(spec_, sel);
        if (auto* msg = std::get_if<std::string>(&r)) {
            error(sel.loc, *msg);
            return {};
        }
        auto& ok = std::get<Resolved>(r);
        if (ok.decl->kind != kind) {
            error(sel.loc, std::string(role) + " must be a " + std::string(keyword(kind)) + ", but '" + sel.name +
                               "' is a " + std::string(keyword(ok.decl->kind)));
            return {};
        }
        return std::move(ok.instances);
    }

    void nodes() {
        std::set<std::string> names;
        std::map<NodeType, std::uint64_t> seen;
        for (const auto& n : spec_.nodes) {
            if (!names.insert(n.name).second) {
                error(n.loc, "duplicate node name '" + n.name + "'");
            }
            if (n.count && *n.count == 0) {
                error(n.loc, "node array '" + n.name + "' must have at least one element");
            }
            seen[n.kind] += n.count.value_or(1);
            if ((n.kind == NodeType::PDN_GW || n.kind == NodeType::SGW_MME) && seen[n.kind] > 1) {
                const std::string kw(keyword(n.kind));
                error(n.loc, "exactly one " + kw + " is allowed; '" + n.name + "' brings the count to " +
                                 std::to_string(seen[n.kind]));
            }
            if (n.kind == NodeType::UE) {
                for (std::uint64_t i = 0; i < n.count.value_or(1); ++i) {
                    ueDecl_[instanceName(n, i)] = &n;
                }
            }
        }
        for (NodeType kind : {NodeType::PDN_GW, NodeType::SGW_MME}) {
            if (seen[kind] == 0) {
                error(spec_.loc, "exactly one " + std::string(keyword(kind)) + " is required, found none");
            }
        }
        for (NodeType kind : {NodeType::ENB, NodeType::UE}) {
            if (seen[kind] == 0) {
                error(spec_.loc, "at least one " + std::string(keyword(kind)) + " is required");
            }
        }
    }

    void attachments() {
        std::set<std::string> attached;
        for (const auto& a : spec_.attachments) {
            auto ues = select(a.ue, NodeType::UE, "attach source");
            auto enbs = select(a.enb, NodeType::ENB, "attach target");
            if (enbs.size() > 1) {
                error(a.enb.loc, "attach target '" + selectorText(a.enb) + "' must name exactly one enb");
            }
            for (const auto& ue : ues) {
                if (!attached.insert(ue).second) {
                    error(a.loc, "ue '" + ue + "' is attached more than once");
                }
            }
        }
        for (const auto& [ue, decl] : ueDecl_) {
            if (!attached.count(ue)) {
                error(decl->loc, "unattached ue '" + ue + "'");
            }
        }
    }

    void links() {
        std::set<std::string> linkedEnbs;
        bool coreLinked = false;
        for (const auto& l : spec_.links) {
            auto from = resolveSelector(spec_, l.from);
            auto to = resolveSelector(spec_, l.to);
            bool bad = false;
            for (auto* r : {&from, &to}) {
                if (auto* msg = std::get_if<std::string>(r)) {
                    error(r == &from ? l.from.loc : l.to.loc, *msg);
                    bad = true;
                }
            }
            if (bad) {
                continue;
            }
            const auto& f = std::get<Resolved>(from);
            const auto& t = std::get<Resolved>(to);
            if (f.decl->kind == NodeType::ENB && t.decl->kind == NodeType::SGW_MME) {
                for (const auto& enb : f.instances) {
                    if (!linkedEnbs.insert(enb).second) {
                        error(l.loc, "enb '" + enb + "' is linked more than once");
                    }
                }
            } else if (f.decl->kind == NodeType::SGW_MME && t.decl->kind == NodeType::PDN_GW) {
                if (coreLinked) {
                    error(l.loc, "the sgw_mme -> pdn_gw link is declared more than once");
                }
                coreLinked = true;
            } else {
                error(l.loc, "links go enb -> sgw_mme or sgw_mme -> pdn_gw, not " +
                                 std::string(keyword(f.decl->kind)) + " -> " + std::string(keyword(t.decl->kind)));
            }
        }
    }

    void generators() {
        std::set<std::string> covered;
        for (const auto& g : spec_.generators) {
            if (g.config.period.isZero()) {
                error(g.loc, "generator period must be positive");
            }
            for (const auto& ue : select(g.ue, NodeType::UE, "generator target")) {
                if (!covered.insert(ue).second) {
                    error(g.loc, "ue '" + ue + "' already has a generator");
                }
            }
        }
    }

    void chains() {
        std::set<NodeType> seen;
        for (const auto& c : spec_.chains) {
            if (!seen.insert(c.kind).second) {
                error(c.loc, "layer chain for " + std::string(keyword(c.kind)) + " is overridden more than once");
                continue;
            }
            if (c.kind == NodeType::UE) {
                error(c.loc, "the ue layer chain cannot be overridden");
                continue;
            }
            std::vector<LayerSpec> layers;
            for (const auto& t : c.tags) {
                layers.push_back(LayerSpec::fromTag(t));
            }
            try {
                checkChain(c.kind, layers);
            } catch (const InvalidChain& e) {
                error(c.loc, e.what());
            }
        }
    }

    const NetworkSpec& spec_;
    std::vector<Diagnostic> diags_;
    std::map<std::string, const NodeDecl*> ueDecl_;
};

}  // namespace

std::vector<Diagnostic> validate(const NetworkSpec& spec) {
    return Validator(spec).run();
}

std::vector<std::string> expandSelector(const NetworkSpec& spec, const Selector& sel) {
    auto r = resolveSelector(spec, sel);
    if (auto* ok = std::get_if<Resolved>(&r)) {
        return std::move(ok->instances);
    }
    return {};
}

ResolvedTopology resolve(const NetworkSpec& spec) {
    ResolvedTopology topo;
    for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
        const auto& d = spec.nodes[i];
        for (std::uint64_t k = 0; k < d.count.value_or(1); ++k) {
            topo.nodes.push_back(NodeInstance{d.kind, instanceName(d, k), i});
        }
        if (d.kind == NodeType::SGW_MME) {
            topo.sgwMme = instanceName(d, 0);
        } else if (d.kind == NodeType::PDN_GW) {
            topo.pdnGw = instanceName(d, 0);
        }
    }
    for (const auto& a : spec.attachments) {
        const auto enbs = expandSelector(spec, a.enb);
        for (const auto& ue : expandSelector(spec, a.ue)) {
            topo.ueToEnb[ue] = enbs.front();
            topo.airDelay[ue] = a.airDelay.value_or(SimTime{});
        }
    }
    for (const auto& l : spec.links) {
        const NodeDecl* from = findDecl(spec, l.from.name);
        if (from->kind == NodeType::ENB) {
            for (const auto& enb : expandSelector(spec, l.from)) {
                topo.enbLinkDelay[enb] = l.delay.value_or(SimTime{});
            }
        } else {
            topo.coreLinkDelay = l.delay.value_or(SimTime{});
        }
    }
    for (const auto& g : spec.generators) {
        for (const auto& ue : expandSelector(spec, g.ue)) {
            topo.generators[ue] = g.config;
        }
    }
    for (NodeType kind : {NodeType::UE, NodeType::ENB, NodeType::SGW_MME, NodeType::PDN_GW}) {
        topo.chains[kind] = defaultChain(kind);
    }
    for (const auto& c : spec.chains) {
        std::vector<LayerSpec> layers;
        for (const auto& t : c.tags) {
            layers.push_back(LayerSpec::fromTag(t));
        }
        topo.chains[c.kind] = std::move(layers);
    }
    return topo;
}

GeneratorStats BuiltNetwork::generatorTotals() const {
    GeneratorStats total;
    for (const Generator* g : generators) {
        total.emitted += g->stats().emitted;
        total.returned += g->stats().returned;
        total.discarded += g->stats().discarded;
    }
    return total;
}

std::map<std::string, std::uint64_t> BuiltNetwork::nasDrops() const {
    std::map<std::string, std::uint64_t> drops;
    for (const auto& [name, node] : nodes) {
        if (node->nas() != nullptr) {
            drops[node->fullPath()] = node->nas()->dropCount();
        }
    }
    return drops;
}

BuiltNetwork build(const NetworkSpec& spec) {
    const ResolvedTopology topo = resolve(spec);
    BuiltNetwork net;
    net.root = std::make_unique<Network>(spec.networkName);

    for (const auto& inst : topo.nodes) {
        NodeModule* node = nullptr;
        switch (inst.kind) {
            case NodeType::UE: {
                std::optional<GeneratorConfig> gen;
                if (auto it = topo.generators.find(inst.name); it != topo.generators.end()) {
                    gen = it->second;
                }
                node = &buildUe(*net.root, inst.name, gen);
                if (node->generator() != nullptr) {
                    net.generators.push_back(node->generator());
                }
                break;
            }
            case NodeType::ENB: node = &buildEnb(*net.root, inst.name, topo.chains.at(NodeType::ENB)); break;
            case NodeType::SGW_MME:
                node = &buildSgwMme(*net.root, inst.name, topo.chains.at(NodeType::SGW_MME));
                break;
            case NodeType::PDN_GW: node = &buildPdnGw(*net.root, inst.name, topo.chains.at(NodeType::PDN_GW)); break;
        }
        net.nodes[inst.name] = node;
    }

    for (const auto& [ue, enb] : topo.ueToEnb) {
        attachUe(*net.nodes.at(ue), *net.nodes.at(enb), topo.airDelay.at(ue));
    }
    NodeModule& core = *net.nodes.at(topo.sgwMme);
    for (const auto& inst : topo.nodes) {
        if (inst.kind == NodeType::ENB) {
            SimTime delay;
            if (auto it = topo.enbLinkDelay.find(inst.name); it != topo.enbLinkDelay.end()) {
                delay = it->second;
            }
            linkEnbToCore(*net.nodes.at(inst.name), core, ChannelSpec{delay});
        }
    }
    linkCoreToPdn(core, *net.nodes.at(topo.pdnGw), ChannelSpec{topo.coreLinkDelay});
    assignIds(*net.root);
    return net;
}

}  // namespace ltesim
