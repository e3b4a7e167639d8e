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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "ltesim/message.hpp"
#include "ltesim/sim_time.hpp"

namespace ltesim {

class Gate;
class Module;

struct ScheduledEvent {
    SimTime fireTime;
    std::uint64_t insertionSeq = 0;  // assigned by FutureEventSet::schedule
    Module* target = nullptr;
    const Gate* arrivalGate = nullptr;  // null for self-messages
    std::unique_ptr<SimMessage> payload;
};

/**
 * Pending events ordered by (fireTime, insertionSeq).
 *
 * Events with equal fire times pop in the order they were scheduled.
 */
class FutureEventSet {
public:
    /// Assigns the next insertion sequence number and returns it.
    /// Throws SchedulingInPast when ev.fireTime < now.
    std::uint64_t schedule(ScheduledEvent ev, SimTime now);

    std::optional<ScheduledEvent> popNext();

    std::optional<SimTime> nextTime() const;
    std::size_t size() const noexcept { return heap_.size(); }
    bool empty() const noexcept { return heap_.empty(); }

private:
    std::vector<ScheduledEvent> heap_;
    std::uint64_t nextSeq_ = 1;
};

}  // namespace ltesim
