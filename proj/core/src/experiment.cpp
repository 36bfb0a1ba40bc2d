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

#include "rismse/experiment.hpp"
#include "rismse/error.hpp"
#include "rismse/mse_objective.hpp"
#include "rismse/transceiver_opt.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

namespace rismse
{

namespace
{

namespace pt = boost::property_tree;

// Allowed keys per section
const std::map<std::string, std::set<std::string>> &known_keys()
{
    static const std::map<std::string, std::set<std::string>> keys{
        {"system",
         {"n_t", "n_r", "m", "d", "ris_rows", "power_dbm", "noise_density_dbm_hz", "bandwidth_hz", "rician_factor"}},
        {"impairments", {"kappa_s", "kappa_d", "concentration"}},
        {"geometry", {"bs_x", "bs_y", "ris_x", "ris_y", "user_x", "user_y"}},
        {"fading",
         {"pathloss_exponent_los", "pathloss_exponent_nlos", "element_spacing", "random_angles", "aod_azimuth",
          "aod_elevation", "aoa_azimuth", "aoa_elevation"}},
        {"sweep", {"variable", "values", "schemes"}},
        {"execution",
         {"realizations", "seed", "jobs", "output", "max_outer_iters", "epsilon", "inner_mm_tol", "inner_mm_max_iters",
          "bisection_tol"}},
    };
    return keys;
}

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string &s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

double to_real(const std::string &field, const std::string &text)
{
    const std::string t = trim(text);
    if (t.empty())
        throw ConfigError(field, "empty value");
    errno = 0;
    char *end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE || std::isnan(v))
        throw ConfigError(field, "'" + t + "' is not a number");
    return v;
}

long long to_integer(const std::string &field, double v)
{
    if (!std::isfinite(v) || v != std::floor(v) || std::abs(v) > 1e15)
        throw ConfigError(field, "expected an integer");
    return static_cast<long long>(v);
}

int to_int(const std::string &field, const std::string &text)
{
    const long long v = to_integer(field, to_real(field, text));
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        throw ConfigError(field, "integer out of range");
    return static_cast<int>(v);
}

bool to_bool(const std::string &field, const std::string &text)
{
    std::string t = trim(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    if (t == "true" || t == "1" || t == "yes" || t == "on")
        return true;
    if (t == "false" || t == "0" || t == "no" || t == "off")
        return false;
    throw ConfigError(field, "'" + t + "' is not a boolean");
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Replaces the impairments while keeping the other two parameters
ImpairmentParams with_impairment(const ImpairmentParams &p, const std::string &name, double v)
{
    double ks = p.kappa_s, kd = p.kappa_d, conc = p.concentration;
    if (name == "kappa_s")
        ks = v;
    else if (name == "kappa_d")
        kd = v;
    else
        conc = v;
    try
    {
        return ImpairmentParams::make(ks, kd, conc);
    }
    catch (const std::exception &e)
    {
        throw ConfigError(name, e.what());
    }
}

} // namespace

const std::vector<std::string> &sweep_variables()
{
    static const std::vector<std::string> names{"m",       "n_t",           "n_r",       "d",
                                                "kappa_s", "kappa_d",       "concentration",
                                                "power_dbm", "rician_factor", "noise_density_dbm_hz"};
    return names;
}

SystemConfig apply_sweep_value(const SystemConfig &base, const std::string &variable, double value)
{
    SystemConfig c = base;
    auto as_count = [&](int &slot) {
        const long long v = to_integer(variable, value);
        if (v < 1 || v > 1 << 20)
            throw ConfigError(variable, "count out of range");
        slot = static_cast<int>(v);
    };

    if (variable == "m")
    {
        as_count(c.m);
        c.ris_rows = 0; // a fixed row count rarely divides every swept M
    }
    else if (variable == "n_t")
        as_count(c.n_t);
    else if (variable == "n_r")
        as_count(c.n_r);
    else if (variable == "d")
        as_count(c.d);
    else if (variable == "kappa_s" || variable == "kappa_d" || variable == "concentration")
        c.impairments = with_impairment(c.impairments, variable, value);
    else if (variable == "power_dbm")
        c.power_budget = dbm_to_watts(value);
    else if (variable == "rician_factor")
        c.rician_factor = value;
    else if (variable == "noise_density_dbm_hz")
        c.noise_power = noise_power_watts(value, c.bandwidth_hz);
    else
        throw ConfigError("sweep.variable", "unknown sweep variable '" + variable + "'");

    try
    {
        c.validate();
    }
    catch (const DomainError &e)
    {
        throw ConfigError(variable, e.what());
    }
    return c;
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t stream, std::uint64_t index)
{
    return splitmix64(splitmix64(splitmix64(base_seed) ^ stream) ^ index);
}

void ExperimentSpec::validate() const
{
    auto wrap = [](const char *field, auto &&fn) {
        try
        {
            fn();
        }
        catch (const ConfigError &)
        {
            throw;
        }
        catch (const std::exception &e)
        {
            throw ConfigError(field, e.what());
        }
    };
    wrap("system", [&] { base_config.validate(); });
    wrap("geometry", [&] { geometry.validate(); });
    wrap("fading", [&] { fading.validate(); });
    wrap("execution", [&] { solve.validate(); });

    if (realizations < 1)
        throw ConfigError("execution.realizations", "must be >= 1");
    if (jobs < 1)
        throw ConfigError("execution.jobs", "must be >= 1");
    if (schemes.empty())
        throw ConfigError("sweep.schemes", "scheme list is empty");
    if (sweep.values.empty())
        throw ConfigError("sweep.values", "sweep list is empty");
    const auto &names = sweep_variables();
    if (std::find(names.begin(), names.end(), sweep.variable) == names.end())
        throw ConfigError("sweep.variable", "unknown sweep variable '" + sweep.variable + "'");
    std::set<double> seen;
    for (double v : sweep.values)
    {
        if (!seen.insert(v).second)
            throw ConfigError("sweep.values", "duplicate value");
        apply_sweep_value(base_config, sweep.variable, v);
    }
    std::set<Scheme> seen_schemes(schemes.begin(), schemes.end());
    if (seen_schemes.size() != schemes.size())
        throw ConfigError("sweep.schemes", "duplicate scheme");
}

ExperimentSpec parse_spec(const std::string &text)
{
    pt::ptree tree;
    try
    {
        std::istringstream in(text);
        pt::ini_parser::read_ini(in, tree);
    }
    catch (const pt::ini_parser_error &e)
    {
        throw ConfigError("file", "line " + std::to_string(e.line()) + ": " + e.message());
    }

    const auto &keys = known_keys();
    for (const auto &[section, body] : tree)
    {
        const auto it = keys.find(section);
        if (it == keys.end())
        {
            if (body.empty())
                throw ConfigError(section, "key outside of any section");
            throw ConfigError(section, "unknown section");
        }
        for (const auto &[key, value] : body)
            if (!it->second.count(key))
                throw ConfigError(section + "." + key, "unknown key");
    }

    ExperimentSpec spec;
    auto get = [&](const std::string &section, const std::string &key) -> std::optional<std::string> {
        if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(section + "." + key, '.')))
            return *v;
        return std::nullopt;
    };
    auto real = [&](const std::string &section, const std::string &key, double &slot) {
        if (auto v = get(section, key))
            slot = to_real(section + "." + key, *v);
    };
    auto integer = [&](const std::string &section, const std::string &key, int &slot) {
        if (auto v = get(section, key))
            slot = to_int(section + "." + key, *v);
    };

    SystemConfig &c = spec.base_config;
    integer("system", "n_t", c.n_t);
    integer("system", "n_r", c.n_r);
    integer("system", "m", c.m);
    integer("system", "d", c.d);
    integer("system", "ris_rows", c.ris_rows);
    real("system", "bandwidth_hz", c.bandwidth_hz);
    double noise_density = -104.0, power_dbm = 30.0;
    real("system", "noise_density_dbm_hz", noise_density);
    real("system", "power_dbm", power_dbm);
    real("system", "rician_factor", c.rician_factor);
    if (!(c.bandwidth_hz > 0.0) || !std::isfinite(c.bandwidth_hz))
        throw ConfigError("system.bandwidth_hz", "must be positive");
    c.noise_power = noise_power_watts(noise_density, c.bandwidth_hz);
    c.power_budget = dbm_to_watts(power_dbm);
    spec.fading.rician_factor = c.rician_factor;

    double ks = c.kappa_s(), kd = c.kappa_d(), conc = c.impairments.concentration;
    real("impairments", "kappa_s", ks);
    real("impairments", "kappa_d", kd);
    real("impairments", "concentration", conc);
    try
    {
        c.impairments = ImpairmentParams::make(ks, kd, conc);
    }
    catch (const std::exception &e)
    {
        const std::string field = !(ks >= 0.0 && ks < 1.0)   ? "impairments.kappa_s"
                                  : !(kd >= 0.0 && kd < 1.0) ? "impairments.kappa_d"
                                                             : "impairments.concentration";
        throw ConfigError(field, e.what());
    }

    real("geometry", "bs_x", spec.geometry.bs_position.x);
    real("geometry", "bs_y", spec.geometry.bs_position.y);
    real("geometry", "ris_x", spec.geometry.ris_position.x);
    real("geometry", "ris_y", spec.geometry.ris_position.y);
    real("geometry", "user_x", spec.geometry.user_position.x);
    real("geometry", "user_y", spec.geometry.user_position.y);

    FadingParams &f = spec.fading;
    real("fading", "pathloss_exponent_los", f.pathloss_exponent_los);
    real("fading", "pathloss_exponent_nlos", f.pathloss_exponent_nlos);
    real("fading", "element_spacing", f.element_spacing);
    real("fading", "aod_azimuth", f.aod.azimuth);
    real("fading", "aod_elevation", f.aod.elevation);
    real("fading", "aoa_azimuth", f.aoa.azimuth);
    real("fading", "aoa_elevation", f.aoa.elevation);
    if (auto v = get("fading", "random_angles"))
        f.random_angles = to_bool("fading.random_angles", *v);

    if (auto v = get("sweep", "variable"))
        spec.sweep.variable = trim(*v);
    if (auto v = get("sweep", "values"))
    {
        spec.sweep.values.clear();
        for (const auto &item : split_list(*v))
            spec.sweep.values.push_back(to_real("sweep.values", item));
    }
    if (auto v = get("sweep", "schemes"))
    {
        spec.schemes.clear();
        for (const auto &item : split_list(*v))
        {
            try
            {
                spec.schemes.push_back(parse_scheme(item));
            }
            catch (const DomainError &e)
            {
                throw ConfigError("sweep.schemes", e.what());
            }
        }
    }

    integer("execution", "realizations", spec.realizations);
    integer("execution", "jobs", spec.jobs);
    if (auto v = get("execution", "seed"))
    {
        const std::string t = trim(*v);
        const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), spec.base_seed);
        if (t.empty() || ec != std::errc{} || end != t.data() + t.size())
            throw ConfigError("execution.seed", "expected an unsigned 64-bit integer");
    }
    if (auto v = get("execution", "output"))
        spec.output_path = trim(*v);
    integer("execution", "max_outer_iters", spec.solve.max_outer_iters);
    real("execution", "epsilon", spec.solve.epsilon);
    real("execution", "inner_mm_tol", spec.solve.inner_mm_tol);
    integer("execution", "inner_mm_max_iters", spec.solve.inner_mm_max_iters);
    real("execution", "bisection_tol", spec.solve.bisection_tol);

    spec.validate();
    return spec;
}

ExperimentSpec load_spec(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("file", "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

Moments sample_moments(const std::vector<double> &values)
{
    Moments out;
    if (values.empty())
        return out;
    const double n = double(values.size());
    double sum = 0.0;
    for (double v : values)
        sum += v;
    out.mean = sum / n;
    if (values.size() > 1)
    {
        double ss = 0.0, corr = 0.0;
        for (double v : values)
        {
            ss += (v - out.mean) * (v - out.mean);
            corr += v - out.mean;
        }
        out.stddev = std::sqrt(std::max(0.0, (ss - corr * corr / n) / (n - 1.0)));
    }
    return out;
}

ExperimentResult run_experiment(const ExperimentSpec &spec)
{
    spec.validate();

    const std::size_t n_values = spec.sweep.values.size();
    const std::size_t n_schemes = spec.schemes.size();
    const std::size_t n_real = std::size_t(spec.realizations);

    std::vector<SystemConfig> configs;
    for (double v : spec.sweep.values)
        configs.push_back(apply_sweep_value(spec.base_config, spec.sweep.variable, v));

    // one cell = one (sweep value, realization); all schemes share its channel draw
    std::vector<RealizationRecord> records(n_values * n_real * n_schemes);
    auto run_cell = [&](std::size_t cell) {
        const std::size_t vi = cell / n_real;
        const int r = int(cell % n_real);
        const SystemConfig &config = configs[vi];

        FadingParams fading = spec.fading;
        fading.rician_factor = config.rician_factor;

        std::optional<ChannelSet> channels;
        std::string channel_error;
        try
        {
            std::mt19937_64 rng(derive_seed(spec.base_seed, kChannelStream, std::uint64_t(r)));
            channels = generate_scenario(config, spec.geometry, fading, rng);
        }
        catch (const std::exception &e)
        {
            channel_error = std::string("channel generation: ") + e.what();
        }

        SolveOptions options = spec.solve;
        options.observer = nullptr;
        options.seed = derive_seed(spec.base_seed, kSolverStream, std::uint64_t(r));

        for (std::size_t si = 0; si < n_schemes; ++si)
        {
            RealizationRecord &rec = records[cell * n_schemes + si];
            rec.sweep_index = vi;
            rec.realization = r;
            rec.scheme = spec.schemes[si];
            if (!channels)
            {
                rec.error = channel_error;
                continue;
            }
            try
            {
                const SolveTrace trace = solve_baseline(rec.scheme, *channels, config, options);
                rec.nmse = nmse(trace.final_mse, config.d);
                rec.iterations = trace.iterations_used;
                rec.converged = trace.converged;
                rec.mse_trace = trace.mse_per_iteration;
                if (!std::isfinite(rec.nmse) || rec.nmse < 0.0)
                    rec.error = "non-finite or negative NMSE";
            }
            catch (const std::exception &e)
            {
                rec.error = e.what();
            }
        }
    };

    const std::size_t n_cells = n_values * n_real;
    const std::size_t n_workers = std::min<std::size_t>(std::size_t(spec.jobs), n_cells);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t cell = next++; cell < n_cells; cell = next++)
            run_cell(cell);
    };
    if (n_workers <= 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < n_workers; ++i)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
    }

    ExperimentResult out;
    out.sweep_variable = spec.sweep.variable;
    for (std::size_t vi = 0; vi < n_values; ++vi)
        for (std::size_t si = 0; si < n_schemes; ++si)
        {
            ResultRow row;
            row.sweep_value = spec.sweep.values[vi];
            row.scheme = spec.schemes[si];
            std::vector<double> values, iterations;
            for (std::size_t r = 0; r < n_real; ++r)
            {
                const RealizationRecord &rec = records[(vi * n_real + r) * n_schemes + si];
                if (!rec.error.empty())
                {
                    ++row.failures;
                    out.failures.push_back(out.sweep_variable + "=" + std::to_string(row.sweep_value) + " scheme=" +
                                           std::string(to_string(row.scheme)) + " realization=" +
                                           std::to_string(r) + ": " + rec.error);
                    continue;
                }
                values.push_back(rec.nmse);
                iterations.push_back(double(rec.iterations));
            }
            const Moments m = sample_moments(values);
            row.mean_nmse = m.mean;
            row.std_nmse = m.stddev;
            row.mean_iterations = sample_moments(iterations).mean;
            row.realizations = int(values.size());
            out.rows.push_back(row);
        }

    std::stable_sort(out.rows.begin(), out.rows.end(), [](const ResultRow &a, const ResultRow &b) {
        if (a.sweep_value != b.sweep_value)
            return a.sweep_value < b.sweep_value;
        return to_string(a.scheme) < to_string(b.scheme);
    });
    out.records = std::move(records);
    return out;
}

std::string format_results(const std::vector<ResultRow> &rows, const std::string &sweep_variable)
{
    std::string out = "sweep_variable,sweep_value,scheme,mean_nmse,std_nmse,mean_iterations,realizations\n";
    char buf[512];
    for (const ResultRow &r : rows)
    {
        std::snprintf(buf, sizeof buf, "%s,%.9g,%s,%.9g,%.9g,%.9g,%d\n", sweep_variable.c_str(), r.sweep_value,
                      std::string(to_string(r.scheme)).c_str(), r.mean_nmse, r.std_nmse, r.mean_iterations,
                      r.realizations);
        out += buf;
    }
    return out;
}

void write_results(const std::vector<ResultRow> &rows, const std::string &sweep_variable, const std::string &path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError(path, "cannot open for writing");
    out << format_results(rows, sweep_variable);
    out.flush();
    if (!out)
        throw IoError(path, "write failed");
}

std::vector<ResultRow> read_results(const std::string &path, std::string *sweep_variable)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError(path, "cannot open for reading");
    std::string line;
    if (!std::getline(in, line) ||
        line != "sweep_variable,sweep_value,scheme,mean_nmse,std_nmse,mean_iterations,realizations")
        throw ConfigError("header", "unexpected header in '" + path + "'");

    std::vector<ResultRow> rows;
    int line_no = 1;
    while (std::getline(in, line))
    {
        ++line_no;
        if (line.empty())
            continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ','))
            cols.push_back(item);
        const std::string where = "line " + std::to_string(line_no);
        if (cols.size() != 7)
            throw ConfigError(where, "expected 7 columns");
        if (sweep_variable)
            *sweep_variable = cols[0];
        ResultRow r;
        r.sweep_value = to_real(where, cols[1]);
        try
        {
            r.scheme = parse_scheme(cols[2]);
        }
        catch (const DomainError &e)
        {
            throw ConfigError(where, e.what());
        }
        r.mean_nmse = to_real(where, cols[3]);
        r.std_nmse = to_real(where, cols[4]);
        r.mean_iterations = to_real(where, cols[5]);
        r.realizations = to_int(where, cols[6]);
        rows.push_back(r);
    }
    return rows;
}

void write_trace_json(const ExperimentResult &result, const ExperimentSpec &spec, const std::string &path)
{
    nlohmann::json doc;
    doc["sweep_variable"] = result.sweep_variable;
    doc["base_seed"] = spec.base_seed;
    doc["realizations"] = spec.realizations;
    nlohmann::json recs = nlohmann::json::array();
    for (const RealizationRecord &r : result.records)
    {
        nlohmann::json j;
        j["sweep_value"] = spec.sweep.values.at(r.sweep_index);
        j["realization"] = r.realization;
        j["scheme"] = std::string(to_string(r.scheme));
        if (r.error.empty())
        {
            j["nmse"] = r.nmse;
            j["iterations"] = r.iterations;
            j["converged"] = r.converged;
            j["mse_trace"] = r.mse_trace;
        }
        else
            j["error"] = r.error;
        recs.push_back(std::move(j));
    }
    doc["records"] = std::move(recs);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError(path, "cannot open for writing");
    out << doc.dump(1) << '\n';
    out.flush();
    if (!out)
        throw IoError(path, "write failed");
}

std::vector<OracleCheck> run_oracle_suite(const ExperimentSpec &spec, int instances, std::uint64_t samples)
{
    if (instances < 1 || samples < 2)
        throw DomainError("run_oracle_suite: need >= 1 instance and >= 2 samples");
    spec.validate();
    const SystemConfig &config = spec.base_config;

    std::vector<OracleCheck> out;
    for (int k = 0; k < instances; ++k)
    {
        std::mt19937_64 rng(derive_seed(spec.base_seed, 3, std::uint64_t(k)));
        FadingParams fading = spec.fading;
        fading.rician_factor = config.rician_factor;
        const ChannelSet ch = generate_scenario(config, spec.geometry, fading, rng);

        // random feasible state: W on the power boundary, uniform phases, MMSE equalizer
        TransceiverState st;
        CMat w = complex_gaussian(config.n_t, config.d, rng);
        st.precoder = std::sqrt(config.power_budget / ((1.0 + config.kappa_s()) * w.squaredNorm())) * w;
        st.phases.resize(config.m);
        std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
        for (Eigen::Index i = 0; i < config.m; ++i)
            st.phases(i) = std::polar(1.0, angle(rng));
        st.equalizer = update_equalizer(st.precoder, st.phases, ch, config);

        const MseBreakdown b = analytic_mse(st, ch, config);
        const MonteCarloEstimate mc = monte_carlo_mse(st, ch, config, samples, rng);

        OracleCheck c;
        c.instance = k;
        c.analytic = b.exact();
        c.monte_carlo = mc.estimate;
        c.std_error = mc.std_error.value_or(0.0);
        c.pass = std::abs(c.analytic - c.monte_carlo) <= 3.0 * c.std_error;
        out.push_back(c);
    }
    return out;
}

} // namespace rismse
