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

#ifndef BSC_SNR_METRICS_HPP
#define BSC_SNR_METRICS_HPP

#include "bsc/channel_model.hpp"

namespace bsc
{
    struct SnrReport
    {
        double value_linear = 0;
        double value_db = 0;
        long trials = 0;      // 0 for closed forms
        double std_error = 0; // 0 for closed forms
    };

    SnrReport make_report(double value_linear, double std_error = 0.0, long trials = 0);

    // Conditional Rician model of the beamforming gain given ĥ
    struct RicianMoments
    {
        double mu = 0;
        double sigma2 = 0;
        Flavor flavor = Flavor::LS;
    };

    // ((τ - τ_c) p_t ā² / N0) |ĥ^H h / ‖ĥ‖|^4; zero estimate or τ_c >= τ give 0
    double effective_snr_sample(const cvec &h_hat, const cvec &h, const SystemParams &params, double tau_c);

    SnrReport snr_perfect_csi(const SystemParams &params);
    SnrReport snr_isotropic(const SystemParams &params);

    // Closed-form approximation of the average SNR; K may be real-relaxed in [1, N],
    // τ_c in (0, τ]. Throws std::domain_error outside.
    SnrReport snr_approx(double tau_c, double K, const SystemParams &params);

    // β² a0² p_t τ_c / N0
    double ce_snr(const PilotConfig &cfg, const SystemParams &params);
    double ce_snr(double tau_c, const SystemParams &params);

    // beta that yields CE SNR gamma_e (linear) at τ_c
    double beta_for_ce_snr(double gamma_e, double tau_c, const SystemParams &params);

    // params with beta (and the equivalent range) set to hit gamma_e_db at τ_c
    SystemParams with_ce_snr_db(SystemParams params, double gamma_e_db, double tau_c);

    // params with beta (and range) set so that the perfect-CSI SNR equals gamma_id_db
    SystemParams with_perfect_csi_snr_db(SystemParams params, double gamma_id_db);

    RicianMoments approx_moments(Flavor flavor, const PilotConfig &cfg, const SystemParams &params, double h_hat_norm);
}

#endif
