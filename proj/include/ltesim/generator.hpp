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

#include "ltesim/module.hpp"
#include "ltesim/simulation.hpp"

namespace ltesim {

struct GeneratorConfig {
    SimTime period = SimTime::fromNanoseconds(10'000'000);
    SimTime startTime{};
    MessageKind payloadKind = MessageKind::ControlMessage;
    std::uint64_t payloadBytes = 0;

    friend bool operator==(const GeneratorConfig&, const GeneratorConfig&) = default;
};

struct GeneratorStats {
    std::uint64_t emitted = 0;
    std::uint64_t returned = 0;
    std::uint64_t discarded = 0;
};

/**
 * Periodic traffic source sitting on top of a UE's NAS layer.
 *
 * Each message makes one round trip through the network. When it comes back
 * it is discarded and the next emission is scheduled one period later, so
 * only one message per generator is ever in flight. An emission due at the
 * start of the run happens during initialization; later ones are driven by
 * a reusable self-timer ("GenTimer") that shows up in the trace.
 */
class Generator final : public Module {
public:
    static constexpr const char* kTimerName = "GenTimer";

    explicit Generator(GeneratorConfig config = {}, std::string name = "generator");

    const GeneratorConfig& config() const noexcept { return config_; }
    const GeneratorStats& stats() const noexcept { return stats_; }
    std::uint64_t inFlight() const noexcept { return stats_.emitted - stats_.discarded; }

    void initialize(Simulation& sim) override;
    void handleMessage(Simulation& sim, std::unique_ptr<SimMessage> msg, const Gate* arrival) override;

private:
    void emit(Simulation& sim);
    void onReturn(Simulation& sim, std::unique_ptr<SimMessage> msg);

    GeneratorConfig config_;
    GeneratorStats stats_;
    std::unique_ptr<SimMessage> timer_;  // null while scheduled
    MessageId timerId_ = 0;
};

}  // namespace ltesim
