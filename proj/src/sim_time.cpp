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

#include "ltesim/sim_time.hpp"

namespace ltesim {

std::string SimTime::toSecondsString() const {
    constexpr std::uint64_t kNsPerSecond = 1'000'000'000;
    std::string out = std::to_string(ns_ / kNsPerSecond);
    std::uint64_t frac = ns_ % kNsPerSecond;
    if (frac == 0) {
        return out;
    }
    std::string digits = std::to_string(frac);
    digits.insert(0, 9 - digits.size(), '0');
    while (digits.back() == '0') {
        digits.pop_back();
    }
    out += '.';
    out += digits;
    return out;
}

}  // namespace ltesim
