#include <doctest.h>

#include <random>

#include "ltesim/netconfig.hpp"
#include "test_support.hpp"

using namespace ltesim;
using namespace ltesim::literals;

namespace {

bool mentions(const std::vector<Diagnostic>& diags, const std::string& text) {
    for (const auto& d : diags) {
        if (d.message.find(text) != std::string::npos) {
            return true;
        }
    }
    return false;
}

Selector sel(std::string name, Selector::Form form = Selector::Form::Bare, std::uint64_t first = 0,
             std::uint64_t last = 0) {
    Selector s;
    s.name = std::move(name);
    s.form = form;
    s.first = first;
    s.last = last;
    return s;
}

// Random well-formed spec; it need not validate, only survive print and parse.
NetworkSpec randomSpec(std::mt19937_64& rng) {
    auto pick = [&](std::uint64_t lo, std::uint64_t hi) { return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng); };
    auto duration = [&] {
        static const TimeUnit units[] = {TimeUnit::Nanoseconds, TimeUnit::Microseconds, TimeUnit::Milliseconds,
                                         TimeUnit::Seconds};
        return SimTime::fromUnits(pick(0, 999), units[pick(0, 3)]);
    };
    auto randomSelector = [&](const std::string& name) {
        switch (pick(0, 3)) {
            case 0: return sel(name);
            case 1: return sel(name, Selector::Form::Index, pick(0, 9));
            case 2: {
                const auto a = pick(0, 9);
                return sel(name, Selector::Form::Range, a, a + pick(0, 5));
            }
            default: return sel(name, Selector::Form::All);
        }
    };

    NetworkSpec s;
    s.networkName = "Net" + std::to_string(pick(0, 99));
    const char* kinds[] = {"ue", "enb", "sgw_mme", "pdn_gw"};
    const auto nodeCount = pick(0, 6);
    for (std::uint64_t i = 0; i < nodeCount; ++i) {
        NodeDecl d;
        d.kind = static_cast<NodeType>(pick(0, 3));
        d.name = std::string(kinds[static_cast<int>(d.kind)]) + "_" + std::to_string(i);
        if (pick(0, 1)) {
            d.count = pick(1, 20);
        }
        s.nodes.push_back(d);
    }
    for (std::uint64_t i = pick(0, 3); i > 0; --i) {
        AttachDecl a;
        a.ue = randomSelector("u" + std::to_string(i));
        a.enb = randomSelector("e");
        if (pick(0, 1)) {
            a.airDelay = duration();
        }
        s.attachments.push_back(a);
    }
    for (std::uint64_t i = pick(0, 3); i > 0; --i) {
        LinkDecl l;
        l.from = randomSelector("a");
        l.to = randomSelector("b");
        if (pick(0, 1)) {
            l.delay = duration();
        }
        s.links.push_back(l);
    }
    for (std::uint64_t i = pick(0, 2); i > 0; --i) {
        GeneratorDecl g;
        g.ue = randomSelector("ue");
        g.config.period = SimTime::fromUnits(pick(1, 500), TimeUnit::Milliseconds);
        g.config.startTime = duration();
        if (pick(0, 1)) {
            g.config.payloadKind = MessageKind::Packet;
            g.config.payloadBytes = pick(0, 9000);
        }
        s.generators.push_back(g);
    }
    if (pick(0, 1)) {
        ChainDecl c;
        c.kind = NodeType::SGW_MME;
        c.tags = {"S1", "GTP", "X2", "S5"};
        s.chains.push_back(c);
    }
    if (pick(0, 1)) {
        s.until = duration();
    }
    if (pick(0, 1)) {
        s.seed = rng();
    }
    return s;
}

}  // namespace

TEST_CASE("the single-UE topology parses into four nodes") {
    const auto r = parseNetwork(testing::readFixture("single_ue.net"));
    REQUIRE(r.ok());
    const NetworkSpec& s = *r.spec;
    CHECK(s.networkName == "Network");
    REQUIRE(s.nodes.size() == 4);
    CHECK(s.nodes[0].kind == NodeType::UE);
    CHECK(s.nodes[1].kind == NodeType::ENB);
    CHECK(s.nodes[2].kind == NodeType::SGW_MME);
    CHECK(s.nodes[3].kind == NodeType::PDN_GW);
    CHECK(s.attachments.size() == 1);
    CHECK(s.links.size() == 2);
    REQUIRE(s.generators.size() == 1);
    CHECK(s.generators[0].config.period == 10_ms);
    CHECK(s.until == 1_s);
    CHECK(validate(s).empty());
}

TEST_CASE("an empty body parses; validation then reports what is missing") {
    const auto r = parseNetwork("network N { }");
    REQUIRE(r.ok());
    CHECK(r.spec->nodes.empty());
    const auto diags = validate(*r.spec);
    CHECK(hasErrors(diags));
    CHECK(mentions(diags, "missing 'run until' statement"));
}

TEST_CASE("an unclosed bracket is reported where it opened") {
    const auto r = parseNetwork(testing::readFixture("bad_unclosed.net"));
    CHECK_FALSE(r.ok());
    REQUIRE_FALSE(r.diagnostics.empty());
    const Diagnostic& d = r.diagnostics.front();
    CHECK(d.line == 2);
    CHECK(d.column == 7);
    CHECK(d.message == "unclosed '[': expected ']' before '}'");
    CHECK(formatDiagnostic(d, "bad_unclosed.net") ==
          "bad_unclosed.net:2:7: error: unclosed '[': expected ']' before '}'");
}

TEST_CASE("several syntax errors are all reported") {
    const auto r = parseNetwork("network N {\n  ue a;\n  frob x;\n  enb;\n  blorp;\n  run until 1s;\n}\n");
    CHECK_FALSE(r.ok());
    REQUIRE(r.diagnostics.size() >= 3);
    CHECK(r.diagnostics[0].line == 3);
    CHECK(r.diagnostics[0].message == "unknown keyword 'frob'");
    CHECK(r.diagnostics[1].line == 4);
    CHECK(r.diagnostics[2].line == 5);
}

TEST_CASE("a second pdn_gw is rejected") {
    const auto r = parseNetwork(testing::readFixture("bad_two_pdn.net"));
    REQUIRE(r.ok());
    const auto diags = validate(*r.spec);
    REQUIRE(hasErrors(diags));
    CHECK(diags[0].line == 6);
    CHECK(diags[0].message == "exactly one pdn_gw is allowed; 'gw2' brings the count to 2");
}

TEST_CASE("a selector past the end of an array is dangling") {
    const auto r = parseNetwork(testing::readFixture("bad_dangling.net"));
    REQUIRE(r.ok());
    const auto diags = validate(*r.spec);
    REQUIRE(hasErrors(diags));
    CHECK(diags[0].line == 7);
    CHECK(diags[0].message == "dangling selector 'ue[3]': 'ue' has elements 0..2");
}

TEST_CASE("every UE must be attached") {
    const auto r = parseNetwork(
        "network N { ue x; ue y; enb e; sgw_mme c; pdn_gw g; attach y -> e; run until 1s; }");
    REQUIRE(r.ok());
    const auto diags = validate(*r.spec);
    CHECK(mentions(diags, "unattached ue 'x'"));
    CHECK_FALSE(mentions(diags, "unattached ue 'y'"));
}

TEST_CASE("other validation rules") {
    auto errorsFor = [](const std::string& body) {
        const auto r = parseNetwork("network N {\n" + body + "\n}");
        REQUIRE(r.ok());
        return validate(*r.spec);
    };
    const std::string core = "ue u; enb e; sgw_mme c; pdn_gw g; attach u -> e; run until 1s;\n";
    CHECK_FALSE(hasErrors(errorsFor(core)));
    CHECK(hasErrors(errorsFor("ue u; enb e; pdn_gw g; attach u -> e; run until 1s;")));
    CHECK(hasErrors(errorsFor(core + "generator on e { period 10ms; }")));
    CHECK(hasErrors(errorsFor(core + "generator on u { period 0ns; }")));
    CHECK(hasErrors(errorsFor(core + "link u -> c;")));
    CHECK(hasErrors(errorsFor(core + "chain ue { PHY };")));
    CHECK(hasErrors(errorsFor(core + "chain enb { MAC, PHY };")));
    CHECK_FALSE(hasErrors(errorsFor(core + "chain sgw_mme { S1, X2, S5 };")));
    CHECK(hasErrors(errorsFor(core + "attach u[*] -> e;")));
    CHECK(hasErrors(errorsFor("ue u; ue u; enb e; sgw_mme c; pdn_gw g; attach u -> e; run until 1s;")));
}

TEST_CASE("selectors expand in index order") {
    const auto spec = testing::fixtureSpec("two_cells.net");
    CHECK(expandSelector(spec, sel("ue", Selector::Form::All)) ==
          std::vector<std::string>{"ue[0]", "ue[1]", "ue[2]", "ue[3]"});
    CHECK(expandSelector(spec, sel("ue")) == expandSelector(spec, sel("ue", Selector::Form::All)));
    CHECK(expandSelector(spec, sel("ue", Selector::Form::Range, 1, 2)) == std::vector<std::string>{"ue[1]", "ue[2]"});
    CHECK(expandSelector(spec, sel("core")) == std::vector<std::string>{"core"});
    CHECK(expandSelector(spec, sel("core", Selector::Form::All)).empty());
    CHECK(expandSelector(spec, sel("ue", Selector::Form::Index, 4)).empty());
    CHECK(expandSelector(spec, sel("nobody")).empty());
}

TEST_CASE("the two-cell network builds with the expected paths") {
    const auto spec = testing::fixtureSpec("two_cells.net");
    REQUIRE(validate(spec).empty());
    auto built = build(spec);
    CHECK(built.nodes.size() == 8);
    for (int i = 0; i < 4; ++i) {
        const std::string name = "ue[" + std::to_string(i) + "]";
        REQUIRE(built.nodes.count(name) == 1);
        CHECK(built.nodes.at(name)->fullPath() == "Network." + name);
        CHECK(built.nodes.at(name)->nas()->fullPath() == "Network." + name + ".lte_nas");
    }
    CHECK(built.nodes.at("core")->fullPath() == "Network.core");
    CHECK(built.generators.size() == 4);
    const auto topo = resolve(spec);
    CHECK(topo.ueToEnb.at("ue[1]") == "enb[0]");
    CHECK(topo.ueToEnb.at("ue[2]") == "enb[1]");
    CHECK(topo.sgwMme == "core");
    CHECK(topo.pdnGw == "gw");
}

TEST_CASE("delays land in the resolved topology") {
    const auto topo = resolve(testing::fixtureSpec("delays.net"));
    CHECK(topo.airDelay.at("ue[0]") == 1_ms);
    CHECK(topo.enbLinkDelay.at("enb") == 2_ms);
    CHECK(topo.coreLinkDelay == 3_ms);
    CHECK(topo.generators.at("ue[1]").startTime == 5_ms);
    CHECK(topo.generators.at("ue[1]").payloadBytes == 1500);
}

TEST_CASE("building twice gives the same module tree") {
    auto paths = [] {
        auto built = build(testing::fixtureSpec("two_cells.net"));
        std::vector<std::pair<std::string, Module::Id>> out;
        forEachModule(*built.root, [&](Module& m) { out.emplace_back(m.fullPath(), m.id()); });
        return out;
    };
    CHECK(paths() == paths());
}

TEST_CASE("durations") {
    CHECK(parseDuration("10ms") == 10_ms);
    CHECK(parseDuration("0ns") == 0_ns);
    CHECK(parseDuration("7us") == SimTime::fromUnits(7, TimeUnit::Microseconds));
    CHECK_FALSE(parseDuration("10").has_value());
    CHECK_FALSE(parseDuration("ms").has_value());
    CHECK_FALSE(parseDuration("1.5s").has_value());
    CHECK(formatDuration(1_s) == "1s");
    CHECK(formatDuration(1500_ms) == "1500ms");
    CHECK(formatDuration(0_ns) == "0ns");
    CHECK(formatDuration(1_ns) == "1ns");
}

TEST_CASE("comments and blank lines are ignored") {
    const auto plain = parseNetwork(testing::readFixture("single_ue.net"));
    const auto noisy = parseNetwork("# header\n\n" + testing::readFixture("single_ue.net") + "\n# trailer\n");
    REQUIRE(plain.ok());
    REQUIRE(noisy.ok());
    CHECK(*plain.spec == *noisy.spec);
}

TEST_CASE("the fixtures survive print and parse") {
    for (const char* name : {"single_ue.net", "two_cells.net", "delays.net", "desk_scale.net"}) {
        CAPTURE(name);
        const auto spec = testing::fixtureSpec(name);
        const auto again = parseNetwork(printNetwork(spec));
        REQUIRE(again.ok());
        CHECK(*again.spec == spec);
    }
}

TEST_CASE("random specs survive print and parse") {
    std::mt19937_64 rng(20261016);
    for (int i = 0; i < 500; ++i) {
        const NetworkSpec spec = randomSpec(rng);
        const std::string text = printNetwork(spec);
        CAPTURE(text);
        const auto again = parseNetwork(text);
        REQUIRE(again.ok());
        CHECK(*again.spec == spec);
        CHECK(printNetwork(*again.spec) == text);
    }
}
