// Copyright 2026 The qprob Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qprob: command-line front end.
//
//   qprob <command> (--preset NAME | --scenario FILE) [flags]
//
// Exit status: 0 success, 1 input or usage error, 2 numeric or validation
// failure.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qprob/qprob.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Finite-dimensional quantum probability calculator"};
    app.set_version_flag("--version", "qprob 1.0.0");

    std::string command;
    std::string preset;
    std::string scenario_path;
    qprob::RunOptions opts;
    std::string log_base;
    std::string format = "text";
    std::string observable, rows, cols, channel;
    double correlation_tol = 0.0;

    std::string commands;
    for (auto c : qprob::kCommands) commands += (commands.empty() ? "" : ", ") + std::string(c);
    app.add_option("command", command, "One of: " + commands)
        ->required()
        ->check(CLI::IsMember(std::vector<std::string>(qprob::kCommands.begin(),
                                                       qprob::kCommands.end())));
    auto *p = app.add_option("--preset", preset, "Built-in scenario");
    auto *s = app.add_option("--scenario", scenario_path, "Scenario file (JSON)")
                  ->check(CLI::ExistingFile);
    p->excludes(s);
    app.add_option("--tol", opts.tol, "Structural tolerance")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--log-base", log_base, "Logarithm base for entropy capacities")
        ->check(CLI::IsMember({"2", "e"}));
    app.add_option("--precision", opts.precision, "Decimal places in text output")
        ->capture_default_str()
        ->check(CLI::Range(0, 17));
    app.add_option("--format", format, "Output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_option("--observable", observable, "Observable id (gross, collapse, luder, branches)");
    app.add_option("--rows,--given", rows, "Row (conditioning) observable id");
    app.add_option("--cols", cols, "Column observable id");
    app.add_option("--channel", channel, "Single channel label (collapse, conditional)");
    auto *ct = app.add_option("--correlation-tol", correlation_tol,
                              "Tolerance for the sensor correlation check")
                   ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }
    if (preset.empty() && scenario_path.empty()) {
        std::cerr << "qprob: error: one of --preset or --scenario is required\n";
        return kExitUsage;
    }

    if (!log_base.empty()) opts.log_base = log_base == "2" ? qprob::LogBase::two : qprob::LogBase::natural;
    if (!observable.empty()) opts.observable = observable;
    if (!rows.empty()) opts.rows = rows;
    if (!cols.empty()) opts.cols = cols;
    if (!channel.empty()) opts.channel = channel;
    if (ct->count() > 0) opts.correlation_tol = correlation_tol;
    const std::map<std::string, qprob::Format> formats{
        {"text", qprob::Format::text}, {"csv", qprob::Format::csv}, {"json", qprob::Format::json}};

    try {
        const auto scenario = preset.empty() ? qprob::load_scenario_file(scenario_path, opts.tol)
                                             : qprob::load_preset(preset, opts.tol);
        const auto report = qprob::run(command, scenario, opts);
        std::cout << qprob::render(report, formats.at(format), opts.precision);
        return 0;
    } catch (const qprob::ParseError &e) {
        std::cerr << "qprob: input error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const qprob::UsageError &e) {
        std::cerr << "qprob: usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const qprob::Error &e) {
        std::cerr << "qprob: error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception &e) {
        std::cerr << "qprob: error: " << e.what() << '\n';
        return kExitNumeric;
    }
}
