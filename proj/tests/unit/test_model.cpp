#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "ltesim/errors.hpp"
#include "ltesim/module.hpp"
#include "ltesim/netconfig.hpp"
#include "ltesim/simulation.hpp"
#include "test_support.hpp"

using namespace ltesim;
using namespace ltesim::literals;
using ltesim::testing::Probe;

TEST_CASE("connect wires an Out gate to an In gate") {
    Network net("Network");
    auto& a = net.emplaceChild<Probe>("lte_nas");
    auto& b = net.emplaceChild<Probe>("lte_rrc");
    connect(a.out("outToLowerLayer"), b.in("inFromUpperLayer"));
    CHECK(a.gate("outToLowerLayer").peer() == &b.gate("inFromUpperLayer"));
    CHECK(a.gate("outToLowerLayer").delay() == 0_ns);
}

TEST_CASE("connect rejects direction mismatches and double wiring") {
    Network net("Network");
    auto& a = net.emplaceChild<Probe>("a");
    auto& b = net.emplaceChild<Probe>("b");
    CHECK_THROWS_AS(connect(a.in("x"), b.in("y")), DirectionMismatch);
    CHECK_THROWS_AS(connect(b.in("y"), a.out("o")), DirectionMismatch);
    connect(a.out("o"), b.in("y"));
    CHECK_THROWS_AS(connect(a.out("o"), b.in("z")), GateAlreadyConnected);
}

TEST_CASE("wiring is frozen once the run starts") {
    Network net("Network");
    auto& a = net.emplaceChild<Probe>("a");
    auto& b = net.emplaceChild<Probe>("b");
    a.out("o");
    b.in("i");
    Simulation sim(net);
    sim.run({1_s});
    CHECK_THROWS_AS(connect(a.gate("o"), b.gate("i")), WiringFrozen);
}

TEST_CASE("send over a zero-delay channel arrives at the send time, after queued events") {
    Network net("Network");
    auto& src = net.emplaceChild<Probe>("src");
    auto& dst = net.emplaceChild<Probe>("dst");
    connect(src.out("o1"), dst.in("i1"));
    connect(src.out("o2"), dst.in("i2"));
    src.inject({"o1", "first"});
    src.inject({"o2", "second"});
    Simulation sim(net);
    sim.run({1_s});
    REQUIRE(dst.arrivals.size() == 2);
    CHECK(dst.arrivals[0].time == 0_ns);
    CHECK(dst.arrivals[0].name == "first");
    CHECK(dst.arrivals[0].gate == "i1");
    CHECK(dst.arrivals[1].name == "second");
}

namespace {

// Forwards one message after a self-delay so it sends at a nonzero time.
class DelayedSender : public Module {
public:
    DelayedSender(SimTime when) : Module("sender", "DelayedSender"), when_(when) {
        addGate("out", GateDirection::Out);
    }
    void initialize(Simulation& sim) override {
        sim.scheduleSelf(*this, sim.newMessage("tick", MessageKind::ControlMessage), when_);
    }
    void handleMessage(Simulation& sim, std::unique_ptr<SimMessage> msg, const Gate*) override {
        sentAt = sim.now();
        sim.send(*this, std::move(msg), "out");
    }
    SimTime sentAt;

private:
    SimTime when_;
};

class DirectSender : public Module {
public:
    DirectSender(Module& target, std::string gate, SimTime delay)
        : Module("phy", "DirectSender"), target_(target), gate_(std::move(gate)), delay_(delay) {}
    void initialize(Simulation& sim) override {
        sim.sendDirect(*this, sim.newMessage("PHYMsg", MessageKind::ControlMessage), target_, gate_, delay_);
    }

private:
    Module& target_;
    std::string gate_;
    SimTime delay_;
};

}  // namespace

TEST_CASE("channel delay is additive") {
    Network net("Network");
    auto& s = net.emplaceChild<DelayedSender>(10_ms);
    auto& d = net.emplaceChild<Probe>("dst");
    connect(s.gate("out"), d.in("in"), ChannelSpec{5_ms});
    Simulation sim(net);
    sim.run({1_s});
    REQUIRE(d.arrivals.size() == 1);
    CHECK(s.sentAt == 10_ms);
    CHECK(d.arrivals[0].time == 15_ms);
}

TEST_CASE("send errors") {
    Network net("Network");
    auto& s = net.emplaceChild<Probe>("src");
    s.out("dangling");
    s.inject({"dangling", "m"});
    Simulation sim(net);
    CHECK_THROWS_AS(sim.run({1_s}), UnconnectedGate);

    Network net2("Network");
    auto& s2 = net2.emplaceChild<Probe>("src");
    s2.inject({"nope", "m"});
    Simulation sim2(net2);
    CHECK_THROWS_AS(sim2.run({1_s}), UnknownGate);
}

TEST_CASE("send_direct needs no wiring and honours its delay") {
    for (SimTime delay : {0_ns, 3_ms}) {
        Network net("Network");
        auto& radio = net.emplaceChild<Probe>("lte_radio");
        radio.in("radioIn");
        net.emplaceChild<DirectSender>(radio, "radioIn", delay);
        Simulation sim(net);
        sim.run({1_s});
        REQUIRE(radio.arrivals.size() == 1);
        CHECK(radio.arrivals[0].time == delay);
        CHECK(radio.arrivals[0].gate == "radioIn");
    }
}

TEST_CASE("send_direct to a missing gate fails") {
    Network net("Network");
    auto& radio = net.emplaceChild<Probe>("lte_radio");
    radio.in("radioIn");
    net.emplaceChild<DirectSender>(radio, "radioInn", 0_ns);
    Simulation sim(net);
    CHECK_THROWS_AS(sim.run({1_s}), UnknownTargetGate);
}

TEST_CASE("assign_ids numbers the tree depth-first from 1") {
    Network net("Network");
    auto& m = net.emplaceChild<Probe>("m");
    assignIds(net);
    CHECK(net.id() == 1);
    CHECK(m.id() == 2);

    Network tree("Network");
    auto& a = tree.emplaceChild<Network>("a");  // any module can be a compound
    auto& a1 = a.emplaceChild<Probe>("a1");
    auto& b = tree.emplaceChild<Probe>("b");
    assignIds(tree);
    CHECK(a.id() == 2);
    CHECK(a1.id() == 3);
    CHECK(b.id() == 4);
}

TEST_CASE("full paths") {
    Network net("Network");
    CHECK(net.fullPath() == "Network");
    auto& ue = net.emplaceChild<Network>("ue");
    auto& nas = ue.emplaceChild<Probe>("lte_nas");
    CHECK(nas.fullPath() == "Network.ue.lte_nas");

    auto& ue3 = net.emplaceChild<Network>("ue[3]");
    auto& mac = ue3.emplaceChild<Probe>("lte_mac");
    CHECK(mac.fullPath() == "Network.ue[3].lte_mac");

    Probe loose("orphan");
    CHECK_THROWS_AS(loose.fullPath(), DetachedModule);
}

TEST_CASE("duplicate child names are rejected") {
    Network net("Network");
    net.emplaceChild<Probe>("ue");
    CHECK_THROWS_AS(net.emplaceChild<Probe>("ue"), DuplicateName);
}

TEST_CASE("ids and paths are stable across identical builds of the single-UE network") {
    auto idMap = [] {
        auto built = build(testing::fixtureSpec("single_ue.net"));
        std::map<std::string, Module::Id> ids;
        forEachModule(*built.root, [&](Module& m) { ids[m.fullPath()] = m.id(); });
        return ids;
    };
    const auto first = idMap();
    CHECK(first == idMap());
    std::set<Module::Id> unique;
    for (const auto& [path, id] : first) {
        CHECK(id != 0);
        unique.insert(id);
    }
    CHECK(unique.size() == first.size());
    CHECK(first.count("Network.ue.lte_nas") == 1);
}

TEST_CASE("every send yields exactly one arrival at send time plus delay") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::uint64_t> delayNs(0, 1'000'000);
    for (int round = 0; round < 20; ++round) {
        Network net("Network");
        auto& src = net.emplaceChild<Probe>("src");
        auto& dst = net.emplaceChild<Probe>("dst");
        std::map<std::string, SimTime> delays;
        for (int g = 0; g < 8; ++g) {
            const std::string o = "o" + std::to_string(g);
            const std::string i = "i" + std::to_string(g);
            const SimTime d = SimTime::fromNanoseconds(delayNs(rng));
            connect(src.out(o), dst.in(i), ChannelSpec{d});
            delays[i] = d;
            src.inject({o, "m" + std::to_string(g)});
        }
        Simulation sim(net);
        sim.run({1_s});
        REQUIRE(dst.arrivals.size() == 8);
        std::set<MessageId> seen;
        for (const auto& a : dst.arrivals) {
            CHECK(a.time == delays.at(a.gate));
            CHECK(seen.insert(a.id).second);
        }
        CHECK(std::set<MessageId>(src.sentIds.begin(), src.sentIds.end()) == seen);
    }
}
