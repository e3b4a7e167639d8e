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

#include "ltesim/event_set.hpp"

#include <algorithm>

namespace ltesim {

namespace {

// Heap comparator: true when a should pop after b (std heaps are max-heaps).
bool popsLater(const ScheduledEvent& a, const ScheduledEvent& b) noexcept {
    if (a.fireTime != b.fireTime) {
        return a.fireTime > b.fireTime;
    }
    return a.insertionSeq > b.insertionSeq;
}

}  // namespace

std::uint64_t FutureEventSet::schedule(ScheduledEvent ev, SimTime now) {
    if (ev.fireTime < now) {
        throw SchedulingInPast("event at " + std::to_string(ev.fireTime.nanoseconds()) + "ns scheduled at now=" +
                               std::to_string(now.nanoseconds()) + "ns");
    }
    ev.insertionSeq = nextSeq_++;
    const std::uint64_t seq = ev.insertionSeq;
    heap_.push_back(std::move(ev));
    std::push_heap(heap_.begin(), heap_.end(), popsLater);
    return seq;
}

std::optional<ScheduledEvent> FutureEventSet::popNext() {
    if (heap_.empty()) {
        return std::nullopt;
    }
    std::pop_heap(heap_.begin(), heap_.end(), popsLater);
    ScheduledEvent ev = std::move(heap_.back());
    heap_.pop_back();
    return ev;
}

std::optional<SimTime> FutureEventSet::nextTime() const {
    if (heap_.empty()) {
        return std::nullopt;
    }
    return heap_.front().fireTime;
}

}  // namespace ltesim
