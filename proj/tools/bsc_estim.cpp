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

// bsc-estim: experiment runner, optimizer front-end and self test

#include "bsc/config.hpp"
#include "bsc/experiments.hpp"
#include "bsc/optimizer.hpp"
#include "bsc/selftest.hpp"
#include "bsc/snr_metrics.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>

namespace
{
    constexpr int exit_ok = 0, exit_validation = 1, exit_runtime = 2;

    bsc::ExperimentConfig load(const std::string &path)
    {
        bsc::ConfigLoad l = bsc::load_config(path);
        for (const auto &w : l.warnings)
            std::cerr << "warning: " << w << "\n";
        return l.config;
    }

    int cmd_run(const std::string &path, std::optional<std::uint64_t> seed, std::optional<long> trials,
                std::optional<int> workers, std::optional<std::string> out)
    {
        bsc::ExperimentConfig cfg = load(path);
        if (seed)
            cfg.seed = *seed;
        if (trials)
            cfg.trials = *trials;
        if (workers)
            cfg.workers = *workers;
        if (out)
            cfg.output_path = *out;
        cfg.validate();

        std::vector<bsc::ResultRow> partial;
        try
        {
            const auto rows = bsc::run_experiment(cfg, [&](const bsc::ResultRow &r) { partial.push_back(r); });
            bsc::write_csv(rows, cfg.output_path);
            std::cerr << "wrote " << rows.size() << " rows to " << cfg.output_path << "\n";
        }
        catch (...)
        {
            if (!partial.empty())
            {
                try
                {
                    bsc::write_csv(partial, cfg.output_path);
                    std::cerr << "partial results (" << partial.size() << " rows) written to " << cfg.output_path << "\n";
                }
                catch (...)
                {
                }
            }
            throw;
        }
        return exit_ok;
    }

    int cmd_optimize(const std::string &path, bool has_prior)
    {
        const bsc::ExperimentConfig cfg = load(path);
        const bsc::SystemParams &p = cfg.params;
        const bsc::OptimizationOutcome o = bsc::decide(p, has_prior);
        const double tq = bsc::quantize_ce_time(o.tau_c_opt, p);

        nlohmann::ordered_json j;
        j["tau_c_opt"] = o.tau_c_opt;
        j["tau_c_opt_quantized"] = tq;
        j["k_opt"] = o.k_opt;
        j["predicted_snr"] = o.predicted_snr;
        j["predicted_snr_db"] = bsc::to_db(o.predicted_snr);
        j["decision_path"] = std::string(bsc::to_string(o.decision_path));
        j["estimator_choice"] = std::string(bsc::to_string(o.estimator_choice));
        j["ce_snr_k1_db"] = bsc::to_db(o.ce_snr_k1);
        j["threshold_db"] = bsc::to_db(o.threshold);
        j["beta"] = p.beta;
        j["snr_perfect_csi_db"] = bsc::snr_perfect_csi(p).value_db;
        j["snr_isotropic_db"] = bsc::snr_isotropic(p).value_db;
        std::cout << j.dump(2) << "\n";
        return exit_ok;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Channel estimation and resource allocation for monostatic backscatter readers"};
    app.require_subcommand(1);

    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<long> trials;
    std::optional<int> workers;
    std::optional<std::string> out;
    bool has_prior = true;

    auto *run = app.add_subcommand("run", "Run the configured sweep and write CSV");
    run->add_option("--config", config, "Config file (key = value)")->required();
    run->add_option("--seed", seed, "Experiment seed (u64)");
    run->add_option("--trials", trials, "Monte Carlo trials per point")->check(CLI::PositiveNumber);
    run->add_option("--workers", workers, "Worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);
    run->add_option("--out", out, "Output CSV path");

    auto *opt = app.add_subcommand("optimize", "Print the joint allocation for the configured system");
    opt->add_option("--config", config, "Config file (key = value)")->required();
    opt->add_flag("!--no-prior", has_prior, "Prior statistics unavailable: choose LS");

    auto *self = app.add_subcommand("selftest", "Run the analytic-oracle checks");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_validation;
    }

    try
    {
        if (*run)
            return cmd_run(config, seed, trials, workers, out);
        if (*opt)
            return cmd_optimize(config, has_prior);
        if (*self)
            return bsc::run_selftest(std::cout) == 0 ? exit_ok : exit_runtime;
    }
    catch (const bsc::ConfigError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_runtime;
    }
    return exit_ok;
}
