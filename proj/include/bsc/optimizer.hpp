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

#ifndef BSC_OPTIMIZER_HPP
#define BSC_OPTIMIZER_HPP

#include "bsc/channel_model.hpp"

#include <string_view>

namespace bsc
{
    enum class DecisionPath
    {
        CornerK1,
        CornerKN
    };

    constexpr std::string_view to_string(DecisionPath d)
    {
        return d == DecisionPath::CornerK1 ? "CORNER_K1" : "CORNER_KN";
    }

    struct OptimizationOutcome
    {
        double tau_c_opt = 0;
        int k_opt = 1;
        double predicted_snr = 0; // closed-form SNR at (tau_c_opt, k_opt)
        DecisionPath decision_path = DecisionPath::CornerK1;
        Flavor estimator_choice = Flavor::LS;

        double ce_snr_k1 = 0; // CE SNR at the K = 1 optimal allocation, fed to the rule
        double threshold = 0; // (N-1)² / (8(N+1))
    };

    // d/dτ_c of the closed-form SNR, analytic; K may be real-relaxed
    double snr_approx_derivative(double tau_c, double K, const SystemParams &params);

    // argmax over τ_c in (0, τ) of the closed-form SNR, by bisection on the derivative sign.
    // N = 1 has no interior maximum (the SNR falls with τ_c) and throws std::domain_error.
    double optimal_ta(double K, const SystemParams &params);

    double snr_threshold(int N);

    // 1 if the CE SNR for E_c is at or below the threshold, else N
    int optimal_pc(double E_c, const SystemParams &params);

    OptimizationOutcome joint_optimize(const SystemParams &params);

    // joint_optimize plus the estimator fork: LMMSE needs the prior statistics
    OptimizationOutcome decide(const SystemParams &params, bool has_prior_stats);

    // beta such that the CE SNR at the K = 1 optimal allocation (the quantity the joint
    // rule compares with the threshold) equals gamma_e1 (linear)
    double beta_for_rule_snr(double gamma_e1, const SystemParams &params);

    // Nearest multiple of L (at least one sample) strictly below τ
    double quantize_ce_time(double tau_c, const SystemParams &params);
}

#endif
