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

#ifndef RISMSE_EXPERIMENT_HPP
#define RISMSE_EXPERIMENT_HPP

#include "rismse/ao_solver.hpp"
#include "rismse/channel_model.hpp"
#include "rismse/system_config.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rismse
{

struct SweepSpec
{
    std::string variable = "m";
    std::vector<double> values{20, 30, 40, 50, 60, 70};
};

/// A full experiment: base link configuration, scenario, sweep and execution settings.
///
/// Loaded from an INI-style file with the sections [system], [impairments], [geometry],
/// [fading], [sweep] and [execution]; every key is optional. See README.md for the key list.
struct ExperimentSpec
{
    SystemConfig base_config;
    ScenarioGeometry geometry;
    FadingParams fading;
    SweepSpec sweep;
    std::vector<Scheme> schemes{std::begin(kAllSchemes), std::end(kAllSchemes)};
    int realizations = 100;
    std::uint64_t base_seed = 1;
    std::string output_path = "results.csv";
    SolveOptions solve;
    int jobs = 1;

    // Throws ConfigError naming the offending field
    void validate() const;
};

/// Parses the configuration text. Throws ConfigError.
ExperimentSpec parse_spec(const std::string &text);

/// Reads and parses a configuration file. Throws ConfigError (including for a missing file).
ExperimentSpec load_spec(const std::string &path);

/// Names accepted as [sweep] variable.
const std::vector<std::string> &sweep_variables();

/// Copy of `base` with the named field set to `value`. Throws ConfigError for an unknown
/// name, a non-integral count or a value that violates the config invariants.
SystemConfig apply_sweep_value(const SystemConfig &base, const std::string &variable, double value);

/// Seed of one random stream, a pure function of its arguments (SplitMix64 mixing).
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t stream, std::uint64_t index);

inline constexpr std::uint64_t kChannelStream = 1;
inline constexpr std::uint64_t kSolverStream = 2;

struct ResultRow
{
    double sweep_value = 0.0;
    Scheme scheme = Scheme::proposed;
    double mean_nmse = 0.0;
    double std_nmse = 0.0; // sample standard deviation over realizations
    double mean_iterations = 0.0;
    int realizations = 0;  // successful realizations aggregated
    int failures = 0;      // realizations whose solve threw
};

struct RealizationRecord
{
    std::size_t sweep_index = 0;
    int realization = 0;
    Scheme scheme = Scheme::proposed;
    double nmse = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> mse_trace;
    std::string error; // non-empty on failure
};

struct ExperimentResult
{
    std::string sweep_variable;
    std::vector<ResultRow> rows;             // sorted by (sweep_value, scheme)
    std::vector<RealizationRecord> records;  // every (sweep value, realization, scheme) cell
    std::vector<std::string> failures;       // one message per failed cell

    bool ok() const { return failures.empty(); }
};

/// Runs every (sweep value, realization, scheme) cell, `spec.jobs` at a time.
///
/// Channel and solver seeds depend on (base_seed, realization) only, so every sweep point
/// sees the same draws and results do not depend on the job count. A failing cell is
/// recorded and the run continues.
ExperimentResult run_experiment(const ExperimentSpec &spec);

/// mean and sample standard deviation (two-pass)
struct Moments
{
    double mean = 0.0;
    double stddev = 0.0;
};
Moments sample_moments(const std::vector<double> &values);

/// CSV with header `sweep_variable,sweep_value,scheme,mean_nmse,std_nmse,mean_iterations,realizations`,
/// reals printed with 9 significant digits. Throws IoError.
void write_results(const std::vector<ResultRow> &rows, const std::string &sweep_variable, const std::string &path);

// Same text as write_results
std::string format_results(const std::vector<ResultRow> &rows, const std::string &sweep_variable);

/// Parses a file produced by write_results. Throws IoError / ConfigError.
std::vector<ResultRow> read_results(const std::string &path, std::string *sweep_variable = nullptr);

/// JSON dump of every realization record including MSE traces. Throws IoError.
void write_trace_json(const ExperimentResult &result, const ExperimentSpec &spec, const std::string &path);

/// One Monte-Carlo-vs-analytic comparison.
struct OracleCheck
{
    int instance = 0;
    double analytic = 0.0; // analytic total + y_term
    double monte_carlo = 0.0;
    double std_error = 0.0;
    bool pass = false;
};

/// Cross-checks the analytic MSE against simulation on `instances` random feasible states
/// over channels drawn from the spec scenario; pass means agreement within 3 standard errors.
std::vector<OracleCheck> run_oracle_suite(const ExperimentSpec &spec, int instances, std::uint64_t samples);

} // namespace rismse

#endif
