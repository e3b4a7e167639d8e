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
#include <stdexcept>
#include <string>

namespace ltesim {

/// Root of every error raised by the simulation library.
class SimError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SimTimeOverflow : public SimError {
public:
    using SimError::SimError;
};

class SchedulingInPast : public SimError {
public:
    using SimError::SimError;
};

class InvalidMessage : public SimError {
public:
    using SimError::SimError;
};

// Wiring errors.
class GateAlreadyConnected : public SimError {
public:
    using SimError::SimError;
};

class DirectionMismatch : public SimError {
public:
    using SimError::SimError;
};

class WiringFrozen : public SimError {
public:
    using SimError::SimError;
};

class UnknownGate : public SimError {
public:
    using SimError::SimError;
};

class UnconnectedGate : public SimError {
public:
    using SimError::SimError;
};

class UnknownTargetGate : public SimError {
public:
    using SimError::SimError;
};

class DetachedModule : public SimError {
public:
    using SimError::SimError;
};

class DuplicateName : public SimError {
public:
    using SimError::SimError;
};

// Layer behavior errors.
class UnknownArrivalGate : public SimError {
public:
    using SimError::SimError;
};

class NoRadioPeer : public SimError {
public:
    using SimError::SimError;
};

class NoRoute : public SimError {
public:
    using SimError::SimError;
};

class InvalidChain : public SimError {
public:
    using SimError::SimError;
};

/// Wraps any exception escaping a module handler with the event context.
class HandlerFailure : public SimError {
public:
    HandlerFailure(std::string modulePath, std::uint64_t eventNo, const std::string& cause)
        : SimError("event #" + std::to_string(eventNo) + " at " + modulePath + ": " + cause),
          modulePath_(std::move(modulePath)),
          eventNo_(eventNo) {}

    const std::string& modulePath() const noexcept { return modulePath_; }
    std::uint64_t eventNo() const noexcept { return eventNo_; }

private:
    std::string modulePath_;
    std::uint64_t eventNo_;
};

class MalformedTrace : public SimError {
public:
    MalformedTrace(std::size_t line, const std::string& what)
        : SimError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace ltesim
