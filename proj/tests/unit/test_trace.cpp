#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "ltesim/errors.hpp"
#include "ltesim/trace.hpp"
#include "test_support.hpp"

using namespace ltesim;
using namespace ltesim::literals;

namespace {

EventRecord rec(std::uint64_t n, SimTime t, std::string path, std::string type, Module::Id mid, std::string name,
                MessageKind kind, MessageId msgId) {
    return EventRecord{n, t, std::move(path), std::move(type), mid, std::move(name), kind, msgId};
}

std::vector<EventRecord> runFixture(const std::string& name, std::optional<SimTime> until = std::nullopt) {
    const auto spec = testing::fixtureSpec(name);
    auto built = build(spec);
    Simulation sim(*built.root, spec.seed.value_or(0));
    RecordingSink sink;
    sim.run({until.value_or(*spec.until)}, &sink);
    return sink.records();
}

// Written out by hand from the default stacks of the single-UE network.
std::vector<std::string> singleUeRoundTrip() {
    std::vector<std::string> p;
    auto add = [&](const std::string& node, std::initializer_list<const char*> mods) {
        for (const char* m : mods) {
            p.push_back("Network." + node + "." + m);
        }
    };
    add("ue", {"lte_nas", "lte_rrc", "lte_pdcp", "lte_rlc", "lte_mac", "lte_phy"});
    add("enb", {"lte_radio", "lte_phy", "lte_mac", "lte_rlc", "lte_pdcp", "lte_rrc", "lte_gtp"});
    add("sgw_mme", {"lte_s1", "lte_gtp", "lte_s5"});
    add("pdn_gw", {"lte_s5", "lte_gtp", "lte_ip", "lte_gtp", "lte_s5"});
    add("sgw_mme", {"lte_s5", "lte_gtp", "lte_s1"});
    add("enb", {"lte_gtp", "lte_rrc", "lte_pdcp", "lte_rlc", "lte_mac", "lte_phy"});
    add("ue", {"lte_radio", "lte_phy", "lte_mac", "lte_rlc", "lte_pdcp", "lte_rrc", "lte_nas", "generator"});
    return p;
}

}  // namespace

TEST_CASE("paper-format lines") {
    CHECK(formatEventLine(rec(1, 0_ns, "Network.ue.lte_nas", "lte_nas", 18, "NASMsg", MessageKind::ControlMessage, 2)) ==
          "** Event #1 T=0 Network.ue.lte_nas (lte_nas, id=18), on `NASMsg' (cMessage, id=2)");
    CHECK(formatEventLine(rec(2, 0_ns, "Network.ue.lte_rrc", "lte_rrc", 17, "RRCMsg", MessageKind::ControlMessage, 2)) ==
          "** Event #2 T=0 Network.ue.lte_rrc (lte_rrc, id=17), on `RRCMsg' (cMessage, id=2)");
    CHECK(formatEventLine(rec(9, 1500_ms, "N.x", "X", 3, "XPck", MessageKind::Packet, 4)) ==
          "** Event #9 T=1.5 N.x (X, id=3), on `XPck' (cPacket, id=4)");
    CHECK(formatEventLine(rec(9, 10_ms, "N.x", "X", 3, "XMsg", MessageKind::ControlMessage, 4)).find("T=0.01 ") !=
          std::string::npos);
}

TEST_CASE("structured lines carry every field in a fixed order") {
    const auto r = rec(1, 0_ns, "Network.ue.lte_nas", "lte_nas", 18, "NASMsg", MessageKind::ControlMessage, 2);
    const std::string line = toStructuredLine(r);
    CHECK(line ==
          R"({"event_no":1,"t_ns":0,"path":"Network.ue.lte_nas","type":"lte_nas","module_id":18,)"
          R"("msg_name":"NASMsg","msg_kind":"cMessage","msg_id":2})");
    CHECK(parseStructuredLine(line, 1) == r);
}

TEST_CASE("1000 random records round-trip through the structured form") {
    std::mt19937_64 rng(99);
    std::vector<EventRecord> records;
    std::ostringstream out;
    StructuredTraceSink sink(out);
    SimTime t;
    for (std::uint64_t n = 1; n <= 1000; ++n) {
        t += SimTime::fromNanoseconds(rng() % 1'000'000);
        records.push_back(rec(n, t, "Network.n" + std::to_string(rng() % 50) + ".m\"q\\", "T" + std::to_string(n % 7),
                              rng() % 100, "M\tsg", (rng() & 1) ? MessageKind::Packet : MessageKind::ControlMessage,
                              rng()));
        sink.record(records.back());
    }
    const std::string text = out.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 1000);
    std::istringstream in(text);
    CHECK(readStructuredTrace(in) == records);
}

TEST_CASE("malformed structured input names its line") {
    std::istringstream in(toStructuredLine(rec(1, 0_ns, "a", "b", 1, "c", MessageKind::Packet, 1)) +
                          "\n{\"event_no\":2}\n");
    try {
        readStructuredTrace(in);
        FAIL("expected MalformedTrace");
    } catch (const MalformedTrace& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parseStructuredLine("not json", 7), MalformedTrace);
    CHECK_THROWS_AS(parseStructuredLine(R"({"event_no":1,"t_ns":0,"path":"a","type":"b","module_id":1,)"
                                        R"("msg_name":"c","msg_kind":"cThing","msg_id":1})",
                                        1),
                    MalformedTrace);
}

TEST_CASE("identical runs give byte-identical traces") {
    for (const char* name : {"single_ue.net", "two_cells.net", "delays.net"}) {
        CAPTURE(name);
        auto render = [&] {
            std::ostringstream paper;
            std::ostringstream structured;
            PaperTraceSink p(paper);
            StructuredTraceSink s(structured);
            for (const auto& r : runFixture(name)) {
                p.record(r);
                s.record(r);
            }
            return paper.str() + structured.str();
        };
        CHECK(render() == render());
    }
}

TEST_CASE("the oracle walk agrees with a hand-written single-UE round trip") {
    const auto spec = testing::fixtureSpec("single_ue.net");
    const auto expected = singleUeRoundTrip();
    REQUIRE(expected.size() == 38);
    CHECK(expectedRoundTripPath(spec, resolve(spec), "ue") == expected);

    const auto records = runFixture("single_ue.net", 1_ns);
    REQUIRE(records.size() == 38);
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(records[i].modulePath == expected[i]);
    }
}

TEST_CASE("single-UE metrics: zero RTT, 38 hops, no mismatches") {
    const auto spec = testing::fixtureSpec("single_ue.net");
    const auto records = runFixture("single_ue.net");
    const Metrics m = summarize(records, spec);
    CHECK(m.totalEvents == records.size());
    CHECK(m.roundTrips == 100);
    CHECK(m.timerEvents == 99);
    CHECK(m.inFlight == 0);
    CHECK(m.pathMismatches.empty());
    CHECK(m.totalEvents == m.roundTrips * 38 + m.timerEvents);
    REQUIRE(m.perMessageRtt.size() == 100);
    for (const auto& [id, rtt] : m.perMessageRtt) {
        CHECK(rtt == 0_ns);
        CHECK(m.perMessageHopCount.at(id) == 38);
    }
}

TEST_CASE("RTT follows the configured delays") {
    const auto spec = testing::fixtureSpec("delays.net");
    const Metrics m = summarize(runFixture("delays.net"), spec);
    CHECK(m.pathMismatches.empty());
    // Two air hops, two eNB-core hops, two core-PDN hops.
    const SimTime rtt = SimTime::fromUnits(2 * (1 + 2 + 3), TimeUnit::Milliseconds);
    REQUIRE(!m.perMessageRtt.empty());
    for (const auto& [id, t] : m.perMessageRtt) {
        CHECK(t == rtt);
    }
    CHECK(m.inFlight <= 2);
}

TEST_CASE("summarize reads the structured stream too") {
    const auto spec = testing::fixtureSpec("two_cells.net");
    const auto records = runFixture("two_cells.net", 100_ms);
    std::ostringstream out;
    StructuredTraceSink sink(out);
    for (const auto& r : records) {
        sink.record(r);
    }
    std::istringstream in(out.str());
    const Metrics a = summarize(in, spec);
    const Metrics b = summarize(records, spec);
    CHECK(a.roundTrips == b.roundTrips);
    CHECK(a.perMessageHopCount == b.perMessageHopCount);
    CHECK(a.perMessageRtt == b.perMessageRtt);
    CHECK(metricsToJson(a) == metricsToJson(b));
    CHECK(a.roundTrips == 40);
}

TEST_CASE("an empty trace gives zero metrics") {
    const Metrics m = summarize(std::span<const EventRecord>{}, testing::fixtureSpec("single_ue.net"));
    CHECK(m.totalEvents == 0);
    CHECK(m.roundTrips == 0);
    CHECK(m.inFlight == 0);
    CHECK(m.pathMismatches.empty());
    std::istringstream empty("");
    CHECK(summarize(empty, testing::fixtureSpec("single_ue.net")).totalEvents == 0);
}

TEST_CASE("a detour is reported as a path mismatch") {
    const auto spec = testing::fixtureSpec("single_ue.net");
    auto records = runFixture("single_ue.net", 1_ns);
    records[20].modulePath = "Network.enb.lte_mac";
    const Metrics m = summarize(records, spec);
    REQUIRE(m.pathMismatches.size() == 1);
    CHECK(m.pathMismatches[0].msgId == records[0].msgId);
    CHECK(m.roundTrips == 0);
}

TEST_CASE("a trace cut short leaves messages in flight") {
    const auto spec = testing::fixtureSpec("single_ue.net");
    auto records = runFixture("single_ue.net", 1_ns);
    records.resize(25);
    const Metrics m = summarize(records, spec);
    CHECK(m.inFlight == 1);
    CHECK(m.roundTrips == 0);
    CHECK(m.pathMismatches.empty());
}

TEST_CASE("traffic reaching a UE without a generator counts as a drop") {
    const auto spec = testing::fixtureSpec("single_ue.net");
    auto records = runFixture("single_ue.net", 1_ns);
    records.pop_back();
    const Metrics m = summarize(records, spec);
    CHECK(m.drops.at("Network.ue") == 1);
    CHECK(m.inFlight == 0);
}
