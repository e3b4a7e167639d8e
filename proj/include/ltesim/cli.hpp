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
#include <iosfwd>
#include <optional>
#include <string>

#include "ltesim/sim_time.hpp"

namespace ltesim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitUsage = 64;

struct RunOptions {
    std::string configPath;
    std::optional<SimTime> until;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> traceOut;
    std::optional<std::string> structuredOut;
    std::optional<std::string> metricsOut;
    std::optional<std::uint64_t> eventLimit;
    bool quiet = false;
};

/// Full runner: config -> build -> run -> outputs. Returns the exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ltesim::cli
