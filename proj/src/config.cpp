// SPDX-License-Identifier: Apache-2.0
//
// bsc-estim: reciprocity-based channel estimation for monostatic backscatter readers
// Copyright (C) 2026 bsc-estim contributors
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
// ------------------------------------------------------------------------

#include "bsc/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace bsc
{
    std::string_view to_string(SweepKind k)
    {
        switch (k)
        {
        case SweepKind::SnrSweep: return "SNR_SWEEP";
        case SweepKind::TauSweep: return "TAU_SWEEP";
        case SweepKind::KSweep: return "K_SWEEP";
        case SweepKind::NSweep: return "N_SWEEP";
        case SweepKind::Joint: return "JOINT";
        case SweepKind::Compare: return "COMPARE";
        }
        return "?";
    }

    std::string_view to_string(EstimatorChoice e)
    {
        switch (e)
        {
        case EstimatorChoice::LS: return "LS";
        case EstimatorChoice::LMMSE: return "LMMSE";
        case EstimatorChoice::Both: return "BOTH";
        }
        return "?";
    }

    namespace
    {
        std::string trim(std::string_view s)
        {
            const auto b = s.find_first_not_of(" \t\r\n");
            if (b == std::string_view::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r\n");
            return std::string(s.substr(b, e - b + 1));
        }

        std::string upper(std::string s)
        {
            for (auto &c : s)
                c = char(std::toupper(static_cast<unsigned char>(c)));
            return s;
        }

        struct LineError
        {
            std::string what;
        };

        double to_double(const std::string &v)
        {
            double x = 0;
            const auto *end = v.data() + v.size();
            auto [ptr, ec] = std::from_chars(v.data(), end, x);
            if (ec != std::errc() || ptr != end)
                throw LineError{"invalid number '" + v + "'"};
            return x;
        }

        long long to_int(const std::string &v)
        {
            const double x = to_double(v); // accepts 1e4
            if (x != std::floor(x) || std::abs(x) > 9.0e15)
                throw LineError{"expected an integer, got '" + v + "'"};
            return static_cast<long long>(x);
        }

        std::uint64_t to_u64(const std::string &v)
        {
            std::uint64_t x = 0;
            const auto *end = v.data() + v.size();
            auto [ptr, ec] = std::from_chars(v.data(), end, x);
            if (ec != std::errc() || ptr != end)
                throw LineError{"invalid unsigned 64-bit integer '" + v + "'"};
            return x;
        }

        bool to_bool(const std::string &v)
        {
            const std::string u = upper(v);
            if (u == "TRUE" || u == "YES" || u == "ON" || u == "1")
                return true;
            if (u == "FALSE" || u == "NO" || u == "OFF" || u == "0")
                return false;
            throw LineError{"expected a boolean, got '" + v + "'"};
        }

        std::vector<double> to_list(const std::string &v)
        {
            std::vector<double> out;
            std::string item;
            std::istringstream in(v);
            while (std::getline(in, item, ','))
            {
                std::istringstream words(item);
                std::string w;
                while (words >> w)
                    out.push_back(to_double(w));
            }
            return out;
        }

        SweepKind to_sweep(const std::string &v)
        {
            static const std::map<std::string, SweepKind> m = {
                {"SNR_SWEEP", SweepKind::SnrSweep}, {"TAU_SWEEP", SweepKind::TauSweep},
                {"K_SWEEP", SweepKind::KSweep},     {"N_SWEEP", SweepKind::NSweep},
                {"JOINT", SweepKind::Joint},        {"COMPARE", SweepKind::Compare}};
            const auto it = m.find(upper(v));
            if (it == m.end())
                throw LineError{"unknown sweep kind '" + v + "'"};
            return it->second;
        }

        EstimatorChoice to_estimator(const std::string &v)
        {
            const std::string u = upper(v);
            if (u == "LS")
                return EstimatorChoice::LS;
            if (u == "LMMSE")
                return EstimatorChoice::LMMSE;
            if (u == "BOTH")
                return EstimatorChoice::Both;
            throw LineError{"unknown estimator '" + v + "'"};
        }

        void strictly_increasing(const std::vector<double> &g, const char *field)
        {
            if (g.empty())
                throw ConfigError(std::string(field) + " must be nonempty");
            for (std::size_t i = 1; i < g.size(); ++i)
                if (!(g[i] > g[i - 1]))
                    throw ConfigError(std::string(field) + " must be strictly increasing");
        }
    }

    std::vector<double> default_grid(SweepKind kind, const SystemParams &p)
    {
        switch (kind)
        {
        case SweepKind::SnrSweep: // CE SNR [dB] at the fixed allocation
            return {-20, -15, -10, -5, 0, 5, 10, 15, 20, 25, 30, 35};
        case SweepKind::TauSweep: // τ_c [s]
            return {2e-5, 5e-5, 1e-4, 2e-4, 3e-4, 4e-4, 5e-4, 6e-4, 7e-4, 8e-4, 9e-4, 1e-3};
        case SweepKind::KSweep:
        {
            std::vector<double> g;
            for (int k = 1; k <= p.n_antennas; ++k)
                g.push_back(k);
            return g;
        }
        case SweepKind::NSweep:
            return {2, 5, 10, 11, 20, 50, 82, 83, 100, 200, 500, 802, 803, 1000};
        case SweepKind::Joint:
            return {2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
        case SweepKind::Compare: // range [m]
            return {20, 40, 60, 80, 100, 120, 140};
        }
        return {};
    }

    std::vector<double> default_series(SweepKind kind, const SystemParams &p)
    {
        switch (kind)
        {
        case SweepKind::TauSweep: return {p.range}; // range [m]
        case SweepKind::KSweep: return {-5, 0, 5};  // CE SNR [dB]
        case SweepKind::NSweep: return {-10, 0, 10, 20};
        default: return {};
        }
    }

    void ExperimentConfig::finalize()
    {
        if (sweep_grid.empty())
            sweep_grid = default_grid(sweep, params);
        if (series.empty())
            series = default_series(sweep, params);
        validate();
    }

    void ExperimentConfig::validate() const
    {
        try
        {
            params.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(e.what());
        }
        if (!(ce_time > 0.0 && ce_time < params.coherence_time))
            throw ConfigError("ce_time must lie in (0, coherence_time)");
        if (pilot_count < 0 || pilot_count > params.n_antennas)
            throw ConfigError("pilot_count must lie in [1, n_antennas] (0 selects n_antennas)");
        if (trials < 1)
            throw ConfigError("trials must be >= 1");
        if (workers < 0)
            throw ConfigError("workers must be >= 0");
        if (output_path.empty())
            throw ConfigError("output_path must be nonempty");
        strictly_increasing(sweep_grid, "sweep_grid");

        auto all = [&](auto pred) { return std::all_of(sweep_grid.begin(), sweep_grid.end(), pred); };
        switch (sweep)
        {
        case SweepKind::TauSweep:
            if (!all([&](double t) { return t > 0.0 && t <= params.coherence_time; }))
                throw ConfigError("sweep_grid: TAU_SWEEP points must lie in (0, coherence_time]");
            break;
        case SweepKind::KSweep:
            if (!all([&](double k) { return k >= 1 && k <= params.n_antennas && k == std::floor(k); }))
                throw ConfigError("sweep_grid: K_SWEEP points must be integers in [1, n_antennas]");
            break;
        case SweepKind::NSweep:
        case SweepKind::Joint:
            if (!all([](double n) { return n >= 2 && n == std::floor(n); }))
                throw ConfigError("sweep_grid: antenna counts must be integers >= 2");
            break;
        case SweepKind::Compare:
            if (!all([](double d) { return d > 0.0; }))
                throw ConfigError("sweep_grid: ranges must be positive");
            break;
        case SweepKind::SnrSweep:
            break;
        }
        if (sweep == SweepKind::TauSweep &&
            !std::all_of(series.begin(), series.end(), [](double d) { return d > 0.0; }))
            throw ConfigError("series: TAU_SWEEP ranges must be positive");
    }

    ConfigLoad parse_config(std::string_view text)
    {
        ConfigLoad out;
        ExperimentConfig &c = out.config;
        SystemParams &p = c.params;
        bool beta_given = false;

        using Setter = std::function<void(const std::string &)>;
        const std::map<std::string, Setter> setters = {
            {"n_antennas", [&](auto &v) { p.n_antennas = int(to_int(v)); }},
            {"coherence_time", [&](auto &v) { p.coherence_time = to_double(v); }},
            {"sample_len", [&](auto &v) { p.sample_len = to_double(v); }},
            {"tx_power", [&](auto &v) { p.tx_power = to_double(v); }},
            {"tx_power_dbm", [&](auto &v) { p.tx_power = 1e-3 * from_db(to_double(v)); }},
            {"tag_amp_ce", [&](auto &v) { p.tag_amp_ce = to_double(v); }},
            {"tag_amp_id", [&](auto &v) { p.tag_amp_id = to_double(v); }},
            {"noise_var", [&](auto &v) { p.noise_var = to_double(v); }},
            {"carrier_freq", [&](auto &v) { p.carrier_freq = to_double(v); }},
            {"range", [&](auto &v) { p.range = to_double(v); }},
            {"pathloss_exp", [&](auto &v) { p.pathloss_exp = to_double(v); }},
            {"beta", [&](auto &v) { p.beta = to_double(v); beta_given = true; }},
            {"ce_time", [&](auto &v) { c.ce_time = to_double(v); }},
            {"pilot_count", [&](auto &v) { c.pilot_count = int(to_int(v)); }},
            {"sweep", [&](auto &v) { c.sweep = to_sweep(v); }},
            {"sweep_grid", [&](auto &v) { c.sweep_grid = to_list(v); }},
            {"series", [&](auto &v) { c.series = to_list(v); }},
            {"trials", [&](auto &v) { c.trials = long(to_int(v)); }},
            {"seed", [&](auto &v) { c.seed = to_u64(v); }},
            {"estimator", [&](auto &v) { c.estimator = to_estimator(v); }},
            {"output_path", [&](auto &v) { c.output_path = v; }},
            {"workers", [&](auto &v) { c.workers = int(to_int(v)); }},
            {"refine", [&](auto &v) { c.refine = to_bool(v); }},
            {"quantize_ce_time", [&](auto &v) { c.quantize_ce_time = to_bool(v); }},
        };

        std::set<std::string> seen;
        std::istringstream in{std::string(text)};
        std::string raw;
        int line_no = 0;
        while (std::getline(in, raw))
        {
            ++line_no;
            const auto hash = raw.find('#');
            const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
            const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
            if (key.empty())
                throw ConfigError("line " + std::to_string(line_no) + ": missing key");

            const auto it = setters.find(key);
            if (it == setters.end())
            {
                out.warnings.push_back("line " + std::to_string(line_no) + ": unknown key '" + key + "' ignored");
                continue;
            }
            if (!seen.insert(key).second)
                out.warnings.push_back("line " + std::to_string(line_no) + ": '" + key + "' repeated; last value wins");
            if (value.empty())
                throw ConfigError("line " + std::to_string(line_no) + ": '" + key + "' has no value");
            try
            {
                it->second(value);
            }
            catch (const LineError &e)
            {
                throw ConfigError("line " + std::to_string(line_no) + ": field '" + key + "': " + e.what);
            }
        }

        if (!beta_given)
        {
            try
            {
                p.derive_beta();
            }
            catch (const std::domain_error &e)
            {
                throw ConfigError(std::string("cannot derive beta: ") + e.what());
            }
        }
        c.finalize();
        return out;
    }

    ConfigLoad load_config(const std::string &path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw ConfigError("cannot open config file '" + path + "'");
        std::ostringstream ss;
        ss << f.rdbuf();
        try
        {
            return parse_config(ss.str());
        }
        catch (const ConfigError &e)
        {
            throw ConfigError(path + ": " + e.what());
        }
    }
}
