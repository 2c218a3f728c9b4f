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

#ifndef BSC_CONFIG_HPP
#define BSC_CONFIG_HPP

#include "bsc/channel_model.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bsc
{
    enum class SweepKind
    {
        SnrSweep,
        TauSweep,
        KSweep,
        NSweep,
        Joint,
        Compare
    };

    enum class EstimatorChoice
    {
        LS,
        LMMSE,
        Both
    };

    std::string_view to_string(SweepKind k);
    std::string_view to_string(EstimatorChoice e);

    // Bad configuration values; maps to exit code 1
    class ConfigError : public std::invalid_argument
    {
      public:
        using std::invalid_argument::invalid_argument;
    };

    struct ExperimentConfig
    {
        SystemParams params = SystemParams::defaults();
        double ce_time = 1e-4; // fixed benchmark τ_c0 [s]
        int pilot_count = 0;   // 0: K = N
        SweepKind sweep = SweepKind::SnrSweep;
        std::vector<double> sweep_grid; // empty: per-kind default
        std::vector<double> series;     // empty: per-kind default
        long trials = 10000;
        std::uint64_t seed = 1;
        EstimatorChoice estimator = EstimatorChoice::Both;
        std::string output_path = "results.csv";
        int workers = 0; // 0: hardware parallelism
        bool refine = true;
        bool quantize_ce_time = false; // snap optimized τ_c to multiples of sample_len

        int effective_pilot_count() const { return pilot_count > 0 ? pilot_count : params.n_antennas; }

        // Fills per-kind default grids, then checks invariants (throws ConfigError)
        void finalize();
        void validate() const;
    };

    struct ConfigLoad
    {
        ExperimentConfig config;
        std::vector<std::string> warnings;
    };

    // Flat `key = value` text, `#` comments; unknown keys produce warnings
    ConfigLoad parse_config(std::string_view text);
    ConfigLoad load_config(const std::string &path);

    std::vector<double> default_grid(SweepKind kind, const SystemParams &params);
    std::vector<double> default_series(SweepKind kind, const SystemParams &params);
}

#endif
