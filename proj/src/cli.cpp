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

#include "ltesim/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "ltesim/errors.hpp"
#include "ltesim/netconfig.hpp"
#include "ltesim/simulation.hpp"
#include "ltesim/trace.hpp"

namespace ltesim::cli {

namespace {

enum class ConsoleFormat { Paper, Structured, Both };

ConsoleFormat consoleFormatFromEnv(std::ostream& err) {
    const char* value = std::getenv("LTEADV_SIM_TRACE");
    if (value == nullptr || std::string_view(value) == "paper") {
        return ConsoleFormat::Paper;
    }
    const std::string_view v(value);
    if (v == "structured") {
        return ConsoleFormat::Structured;
    }
    if (v == "both") {
        return ConsoleFormat::Both;
    }
    err << "warning: ignoring LTEADV_SIM_TRACE='" << v << "' (expected paper, structured or both)\n";
    return ConsoleFormat::Paper;
}

std::optional<std::string> readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::unique_ptr<std::ofstream> openOutput(const std::string& path, std::ostream& err) {
    auto f = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*f) {
        err << "error: cannot open '" << path << "' for writing\n";
        return nullptr;
    }
    return f;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunOptions opts;
    std::string untilText;

    CLI::App app{"Discrete-event LTE-Advanced protocol stack simulator", "ltesim"};
    app.add_option("--config", opts.configPath, "Topology file")->required();
    app.add_option("--until", untilText, "Stop time override, e.g. 1s or 250ms (exclusive)");
    app.add_option("--seed", opts.seed, "Seed override");
    app.add_option("--trace-out", opts.traceOut, "Write the event log to this file");
    app.add_option("--structured-out", opts.structuredOut, "Write the structured (JSON lines) trace to this file");
    app.add_option("--metrics-out", opts.metricsOut, "Write post-run metrics (JSON) to this file");
    app.add_option("--event-limit", opts.eventLimit, "Stop after this many events");
    app.add_flag("--quiet", opts.quiet, "No trace on the console");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }
    if (!untilText.empty()) {
        opts.until = parseDuration(untilText);
        if (!opts.until || opts.until->isZero()) {
            err << "error: --until expects a positive duration such as 1s or 10ms, got '" << untilText << "'\n\n"
                << app.help();
            return kExitUsage;
        }
    }

    const auto source = readFile(opts.configPath);
    if (!source) {
        err << "error: cannot read config '" << opts.configPath << "'\n";
        return kExitConfig;
    }
    ParseResult parsed = parseNetwork(*source);
    for (const auto& d : parsed.diagnostics) {
        err << formatDiagnostic(d, opts.configPath) << '\n';
    }
    if (!parsed.ok()) {
        return kExitConfig;
    }
    NetworkSpec spec = std::move(*parsed.spec);
    if (opts.until) {
        spec.until = opts.until;
    }
    if (opts.seed) {
        spec.seed = opts.seed;
    }
    const auto problems = validate(spec);
    for (const auto& d : problems) {
        err << formatDiagnostic(d, opts.configPath) << '\n';
    }
    if (hasErrors(problems)) {
        return kExitConfig;
    }

    TeeSink sinks;
    std::unique_ptr<std::ofstream> traceFile;
    std::unique_ptr<std::ofstream> structuredFile;
    std::optional<PaperTraceSink> traceSink;
    std::optional<StructuredTraceSink> structuredSink;
    std::optional<PaperTraceSink> consolePaper;
    std::optional<StructuredTraceSink> consoleStructured;
    RecordingSink recorder;

    if (opts.traceOut) {
        if (!(traceFile = openOutput(*opts.traceOut, err))) {
            return kExitRuntime;
        }
        sinks.add(traceSink.emplace(*traceFile));
    }
    if (opts.structuredOut) {
        if (!(structuredFile = openOutput(*opts.structuredOut, err))) {
            return kExitRuntime;
        }
        sinks.add(structuredSink.emplace(*structuredFile));
    }
    const bool consoleTrace = !opts.quiet && !opts.traceOut && !opts.structuredOut;
    if (consoleTrace) {
        const ConsoleFormat format = consoleFormatFromEnv(err);
        if (format != ConsoleFormat::Structured) {
            sinks.add(consolePaper.emplace(out));
        }
        if (format != ConsoleFormat::Paper) {
            sinks.add(consoleStructured.emplace(out));
        }
    }
    if (opts.metricsOut) {
        sinks.add(recorder);
    }

    BuiltNetwork net = build(spec);
    Simulation sim(*net.root, spec.seed.value_or(0));
    RunSummary summary;
    try {
        summary = sim.run(RunLimits{*spec.until, opts.eventLimit}, sinks.empty() ? nullptr : &sinks);
    } catch (const SimError& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    for (auto* f : {traceFile.get(), structuredFile.get()}) {
        if (f != nullptr && !f->flush()) {
            err << "error: failed writing trace output\n";
            return kExitRuntime;
        }
    }

    if (opts.metricsOut) {
        const Metrics metrics = summarize(std::span<const EventRecord>(recorder.records()), spec,
                                          summary.wallClockSeconds);
        auto f = openOutput(*opts.metricsOut, err);
        if (!f) {
            return kExitRuntime;
        }
        *f << metricsToJson(metrics) << '\n';
    }

    const GeneratorStats gen = net.generatorTotals();
    std::ostream& report = consoleTrace ? err : out;
    report << "events=" << summary.eventsExecuted << " final_time=" << summary.finalTime.toSecondsString()
           << "s stop=" << stopReasonName(summary.stopReason) << " seed=" << summary.seed << " emitted=" << gen.emitted
           << " returned=" << gen.returned << " discarded=" << gen.discarded
           << " wall_seconds=" << summary.wallClockSeconds << '\n';
    return kExitOk;
}

}  // namespace ltesim::cli
