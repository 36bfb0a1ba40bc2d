// SPDX-License-Identifier: Apache-2.0
//
// rismse: MSE transceiver design for RIS-aided MIMO links with hardware impairments
// Copyright (C) 2026 The rismse authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "rismse/error.hpp"
#include "rismse/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

namespace
{

enum ExitCode
{
    exit_ok = 0,
    exit_config = 1,
    exit_solver = 2,
    exit_io = 3,
};

int cmd_validate(const std::string &spec_path)
{
    const rismse::ExperimentSpec spec = rismse::load_spec(spec_path);
    std::printf("%s: ok (%zu sweep values of '%s', %zu schemes, %d realizations)\n", spec_path.c_str(),
                spec.sweep.values.size(), spec.sweep.variable.c_str(), spec.schemes.size(), spec.realizations);
    return exit_ok;
}

int cmd_run(const std::string &spec_path, int jobs, const std::string &output, const std::string &trace_json,
            bool quiet)
{
    rismse::ExperimentSpec spec = rismse::load_spec(spec_path);
    if (jobs > 0)
        spec.jobs = jobs;
    if (!output.empty())
        spec.output_path = output;

    const rismse::ExperimentResult result = rismse::run_experiment(spec);
    rismse::write_results(result.rows, result.sweep_variable, spec.output_path);
    if (!trace_json.empty())
        rismse::write_trace_json(result, spec, trace_json);

    if (!quiet)
        std::cout << rismse::format_results(result.rows, result.sweep_variable);
    if (!result.ok())
    {
        std::fprintf(stderr, "%zu failed cells:\n", result.failures.size());
        for (const auto &f : result.failures)
            std::fprintf(stderr, "  %s\n", f.c_str());
        return exit_solver;
    }
    return exit_ok;
}

int cmd_oracle(const std::string &spec_path, int instances, long long samples, double min_pass_fraction)
{
    const rismse::ExperimentSpec spec = rismse::load_spec(spec_path);
    const auto checks = rismse::run_oracle_suite(spec, instances, std::uint64_t(samples));
    int passed = 0;
    for (const auto &c : checks)
    {
        passed += c.pass;
        std::printf("instance %3d  analytic %.9g  monte_carlo %.9g  se %.3g  %s\n", c.instance, c.analytic,
                    c.monte_carlo, c.std_error, c.pass ? "PASS" : "FAIL");
    }
    const bool ok = passed >= min_pass_fraction * double(checks.size());
    std::printf("%d/%zu within 3 standard errors: %s\n", passed, checks.size(), ok ? "PASS" : "FAIL");
    return ok ? exit_ok : exit_solver;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"rismse: MSE transceiver design for RIS-aided MIMO links with hardware impairments"};
    app.require_subcommand(1);

    std::string spec_path, output, trace_json;
    int jobs = 0;
    bool quiet = false;
    int instances = 50;
    long long samples = 1000000;
    double min_pass = 0.96;

    auto *run = app.add_subcommand("run", "Run the sweep described by a config file and write CSV results");
    run->add_option("spec", spec_path, "Experiment config file")->required();
    run->add_option("-j,--jobs", jobs, "Worker threads (overrides execution.jobs)")->check(CLI::PositiveNumber);
    run->add_option("-o,--output", output, "CSV output path (overrides execution.output)");
    run->add_option("--trace-json", trace_json, "Also write per-realization traces as JSON");
    run->add_flag("-q,--quiet", quiet, "Do not echo the result table");

    auto *validate = app.add_subcommand("validate", "Parse and check a config file without running it");
    validate->add_option("spec", spec_path, "Experiment config file")->required();

    auto *oracle = app.add_subcommand("oracle", "Compare analytic and Monte Carlo MSE on random instances");
    oracle->add_option("spec", spec_path, "Experiment config file")->required();
    oracle->add_option("--instances", instances, "Random instances")->check(CLI::PositiveNumber);
    oracle->add_option("--samples", samples, "Monte Carlo samples per instance")->check(CLI::Range(2LL, 1LL << 40));
    oracle->add_option("--min-pass", min_pass, "Required fraction of passing instances")->check(CLI::Range(0.0, 1.0));

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try
    {
        if (*validate)
            return cmd_validate(spec_path);
        if (*run)
            return cmd_run(spec_path, jobs, output, trace_json, quiet);
        return cmd_oracle(spec_path, instances, samples, min_pass);
    }
    catch (const rismse::ConfigError &e)
    {
        std::fprintf(stderr, "configuration error [%s]: %s\n", e.field().c_str(), e.what());
        return exit_config;
    }
    catch (const rismse::IoError &e)
    {
        std::fprintf(stderr, "I/O error [%s]: %s\n", e.path().c_str(), e.what());
        return exit_io;
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_solver;
    }
}
