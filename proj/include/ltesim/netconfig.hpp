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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ltesim/generator.hpp"
#include "ltesim/nodes.hpp"

// Topology description language.
//
//   network Net {
//     ue ue[4];                     # node declarations, optional count
//     enb enb[2];
//     sgw_mme core;
//     pdn_gw gw;
//     attach ue[0..1] -> enb[0];    # radio attachment (optional "delay D")
//     attach ue[2..3] -> enb[1];
//     link enb[*] -> core delay 1ms;
//     generator on ue[*] { period 10ms; start 0ns; payload packet 1500; }
//     chain sgw_mme { S1, GTP, S5 }; # layer stack override, bottom to top
//     run until 1s;
//     seed 7;
//   }

namespace ltesim {

struct SourceLoc {
    std::uint32_t line = 0;
    std::uint32_t column = 0;
};

struct Selector {
    enum class Form : std::uint8_t { Bare, Index, Range, All };

    std::string name;
    Form form = Form::Bare;
    std::uint64_t first = 0;  // Index, Range
    std::uint64_t last = 0;   // Range (inclusive)
    SourceLoc loc;

    friend bool operator==(const Selector& a, const Selector& b) {
        return a.name == b.name && a.form == b.form && a.first == b.first && a.last == b.last;
    }
};

std::string selectorText(const Selector& sel);

struct NodeDecl {
    NodeType kind = NodeType::UE;
    std::string name;
    std::optional<std::uint64_t> count;  // set when declared as name[count]
    SourceLoc loc;

    friend bool operator==(const NodeDecl& a, const NodeDecl& b) {
        return a.kind == b.kind && a.name == b.name && a.count == b.count;
    }
};

struct AttachDecl {
    Selector ue;
    Selector enb;
    std::optional<SimTime> airDelay;
    SourceLoc loc;

    friend bool operator==(const AttachDecl& a, const AttachDecl& b) {
        return a.ue == b.ue && a.enb == b.enb && a.airDelay == b.airDelay;
    }
};

struct LinkDecl {
    Selector from;
    Selector to;
    std::optional<SimTime> delay;
    SourceLoc loc;

    friend bool operator==(const LinkDecl& a, const LinkDecl& b) {
        return a.from == b.from && a.to == b.to && a.delay == b.delay;
    }
};

struct GeneratorDecl {
    Selector ue;
    GeneratorConfig config;
    SourceLoc loc;

    friend bool operator==(const GeneratorDecl& a, const GeneratorDecl& b) {
        return a.ue == b.ue && a.config == b.config;
    }
};

struct ChainDecl {
    NodeType kind = NodeType::ENB;
    std::vector<std::string> tags;  // bottom to top
    SourceLoc loc;

    friend bool operator==(const ChainDecl& a, const ChainDecl& b) { return a.kind == b.kind && a.tags == b.tags; }
};

/// Parsed topology. Equality ignores source locations.
struct NetworkSpec {
    std::string networkName;
    std::vector<NodeDecl> nodes;
    std::vector<AttachDecl> attachments;
    std::vector<LinkDecl> links;
    std::vector<GeneratorDecl> generators;
    std::vector<ChainDecl> chains;
    std::optional<SimTime> until;
    std::optional<std::uint64_t> seed;
    SourceLoc loc;

    friend bool operator==(const NetworkSpec& a, const NetworkSpec& b) {
        return a.networkName == b.networkName && a.nodes == b.nodes && a.attachments == b.attachments &&
               a.links == b.links && a.generators == b.generators && a.chains == b.chains && a.until == b.until &&
               a.seed == b.seed;
    }
};

enum class Severity : std::uint8_t { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::uint32_t line = 0;
    std::uint32_t column = 0;
    std::string message;
};

/// "<origin>:<line>:<column>: error: <message>"
std::string formatDiagnostic(const Diagnostic& d, std::string_view origin);

bool hasErrors(const std::vector<Diagnostic>& diags) noexcept;

struct ParseResult {
    std::optional<NetworkSpec> spec;  // present when there are no errors
    std::vector<Diagnostic> diagnostics;

    bool ok() const noexcept { return spec.has_value(); }
};

ParseResult parseNetwork(std::string_view source);

/// Semantic checks: cardinality, attachment totality, selector resolution,
/// link endpoints, generator targets, chain overrides, run limit.
std::vector<Diagnostic> validate(const NetworkSpec& spec);

/// Canonical text form; parseNetwork(printNetwork(s)) == s.
std::string printNetwork(const NetworkSpec& spec);

/// "10ms", "1s", "0ns": largest unit that represents d exactly.
std::string formatDuration(SimTime d);

/// Parses "<int><ns|us|ms|s>"; nullopt on anything else.
std::optional<SimTime> parseDuration(std::string_view text);

// ---------------------------------------------------------------------------
// Resolved view of a validated spec, shared by the builder and the trace
// path oracle.

struct NodeInstance {
    NodeType kind = NodeType::UE;
    std::string name;  // "ue" or "ue[3]"
    std::size_t declIndex = 0;
};

struct ResolvedTopology {
    std::vector<NodeInstance> nodes;                     // declaration order
    std::map<std::string, std::string> ueToEnb;          // instance -> instance
    std::map<std::string, SimTime> airDelay;             // per UE instance
    std::map<std::string, SimTime> enbLinkDelay;         // per eNB instance
    SimTime coreLinkDelay;
    std::map<std::string, GeneratorConfig> generators;   // per UE instance
    std::map<NodeType, std::vector<LayerSpec>> chains;   // effective, bottom to top
    std::string sgwMme;
    std::string pdnGw;
};

/// Instance names a selector denotes, in index order. Empty when it does
/// not resolve.
std::vector<std::string> expandSelector(const NetworkSpec& spec, const Selector& sel);

/// Requires a spec with no validation errors.
ResolvedTopology resolve(const NetworkSpec& spec);

struct BuiltNetwork {
    std::unique_ptr<Network> root;
    std::map<std::string, NodeModule*> nodes;  // by instance name
    std::vector<Generator*> generators;

    GeneratorStats generatorTotals() const;
    std::map<std::string, std::uint64_t> nasDrops() const;  // by node path
};

/// Instantiates nodes in declaration order, wires radio attachments and
/// links (missing core links default to zero delay), attaches generators and
/// assigns module ids. Requires a spec with no validation errors.
BuiltNetwork build(const NetworkSpec& spec);

}  // namespace ltesim
