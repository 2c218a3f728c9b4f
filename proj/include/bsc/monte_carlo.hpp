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

#ifndef BSC_MONTE_CARLO_HPP
#define BSC_MONTE_CARLO_HPP

#include "bsc/estimators.hpp"
#include "bsc/snr_metrics.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace bsc
{
    // Calls fn(i) for i in [0, count) on `workers` threads (0 = hardware parallelism).
    // Work is handed out in fixed contiguous chunks; fn must write only to slot i.
    void parallel_for(long count, int workers, const std::function<void(long)> &fn);

    // Neumaier-compensated mean and standard error of the mean, in index order
    struct Stat
    {
        double mean = 0;
        double std_error = 0;
    };
    Stat summarize(const std::vector<double> &x);

    struct McOptions
    {
        int workers = 0;
        VectorOptions vector;
        PilotBasis basis = PilotBasis::Identity;
    };

    // One trial: fresh channel (Channel stream, index i) and noise (Noise stream, index i).
    // The channel draw does not depend on K or the flavor, so runs sharing a seed are paired.
    struct TrialOutcome
    {
        double snr = 0;        // effective SNR sample
        double gain = 0;       // |ĥ^H h|² / ‖ĥ‖²
        double mse = 0;        // min ‖h ∓ ĥ‖²
        double matrix_err = 0; // ‖Ĥ - H_K‖²
        bool degenerate = false;
    };

    struct McSummary
    {
        long trials = 0;
        long degenerate = 0;
        Stat snr, gain, mse, matrix_err;
    };

    McSummary run_monte_carlo(const SystemParams &params, const PilotConfig &cfg, Flavor flavor, long trials,
                              std::uint64_t seed, const McOptions &opt = {});

    SnrReport mc_effective_snr(const SystemParams &params, const PilotConfig &cfg, Flavor flavor, long trials,
                               std::uint64_t seed, const McOptions &opt = {});

    struct PowerReport
    {
        double p_r = 0;
        double p_r_std_error = 0;
        double p_r_perfect = 0;   // N p_t β
        double p_r_isotropic = 0; // p_t β
        long trials = 0;
    };

    PowerReport received_power_metrics(Flavor flavor, const SystemParams &params, const PilotConfig &cfg, long trials,
                                       std::uint64_t seed, const McOptions &opt = {});

    // Sign-aligned vector MSE E{min ‖h ∓ ĥ‖²}
    Stat estimate_mse(Flavor flavor, const SystemParams &params, const PilotConfig &cfg, long trials,
                      std::uint64_t seed, const McOptions &opt = {});
}

#endif
