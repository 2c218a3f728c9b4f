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

#include "bsc/optimizer.hpp"
#include "bsc/snr_metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace bsc
{
    namespace
    {
        void check_k(double K, const SystemParams &p)
        {
            if (!(K >= 1.0 && K <= p.n_antennas))
                throw std::domain_error("pilot count must lie in [1, n_antennas]");
        }
    }

    double snr_approx_derivative(double tau_c, double K, const SystemParams &p)
    {
        check_k(K, p);
        if (!(tau_c > 0.0 && tau_c <= p.coherence_time))
            throw std::domain_error("snr_approx_derivative: tau_c must lie in (0, coherence_time]");

        const double N = p.n_antennas, a0 = p.tag_amp_ce, ab = p.tag_amp_id, b2 = p.beta * p.beta;
        const double c0 = p.tx_power * ab * ab * b2 / p.noise_var;
        const double a = p.noise_var * K / (b2 * a0 * a0 * p.tx_power); // ρ = 1 + a/τ_c
        const double rho = 1.0 + a / tau_c;
        const double g = (N - 1.0) * (N - 2.0) / rho + 4.0 * (N - 1.0) / std::sqrt(rho) + 2.0;

        // (a/τ_c²)/ρ² and (a/τ_c²)ρ^-3/2 written without the τ_c² cancellation
        const double u = tau_c + a;
        const double t1 = a / (u * u);
        const double t2 = a / (std::sqrt(tau_c) * u * std::sqrt(u));
        return c0 * (-g + (p.coherence_time - tau_c) * ((N - 1.0) * (N - 2.0) * t1 + 2.0 * (N - 1.0) * t2));
    }

    double optimal_ta(double K, const SystemParams &p)
    {
        p.validate();
        check_k(K, p);
        if (p.n_antennas < 2)
            throw std::domain_error("optimal_ta: a single antenna has no interior optimum (SNR decreases in tau_c)");

        // derivative -> +inf as τ_c -> 0+ and equals -c0 g < 0 at τ: one sign change (concave)
        const double tau = p.coherence_time;
        double lo = 0.0, hi = tau;
        for (int it = 0; it < 200 && hi - lo > 1e-13 * tau; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            if (snr_approx_derivative(mid, K, p) > 0.0)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    }

    double snr_threshold(int N)
    {
        if (N < 2)
            throw std::domain_error("snr_threshold: N must be >= 2");
        const double n = N;
        return (n - 1.0) * (n - 1.0) / (8.0 * (n + 1.0));
    }

    int optimal_pc(double E_c, const SystemParams &p)
    {
        if (!(E_c > 0.0))
            throw std::domain_error("optimal_pc: E_c must be positive");
        if (p.n_antennas == 1)
            return 1;
        const double a0 = p.tag_amp_ce;
        const double gamma_e = p.beta * p.beta * a0 * a0 * E_c / p.noise_var;
        return gamma_e <= snr_threshold(p.n_antennas) ? 1 : p.n_antennas;
    }

    OptimizationOutcome joint_optimize(const SystemParams &p)
    {
        p.validate();
        OptimizationOutcome o;
        const double tau_k1 = optimal_ta(1.0, p);
        o.ce_snr_k1 = ce_snr(tau_k1, p);
        o.threshold = snr_threshold(p.n_antennas);
        if (o.ce_snr_k1 <= o.threshold)
        {
            o.k_opt = 1;
            o.tau_c_opt = tau_k1;
            o.decision_path = DecisionPath::CornerK1;
        }
        else
        {
            o.k_opt = p.n_antennas;
            o.tau_c_opt = optimal_ta(double(p.n_antennas), p);
            o.decision_path = DecisionPath::CornerKN;
        }
        o.predicted_snr = snr_approx(o.tau_c_opt, o.k_opt, p).value_linear;
        return o;
    }

    OptimizationOutcome decide(const SystemParams &p, bool has_prior_stats)
    {
        OptimizationOutcome o = joint_optimize(p);
        o.estimator_choice = has_prior_stats ? Flavor::LMMSE : Flavor::LS;
        return o;
    }

    double beta_for_rule_snr(double gamma_e1, const SystemParams &p)
    {
        if (!(gamma_e1 > 0.0))
            throw std::domain_error("beta_for_rule_snr: target must be positive");
        auto rule_snr = [&](double log_beta) {
            SystemParams q = p;
            q.beta = std::exp(log_beta);
            return ce_snr(optimal_ta(1.0, q), q);
        };
        // the CE SNR at the optimum grows with beta; bracket from the fixed-τ_c inverse
        double mid = std::log(beta_for_ce_snr(gamma_e1, 0.5 * p.coherence_time, p));
        double lo = mid - 2.0, hi = mid + 2.0;
        while (rule_snr(lo) > gamma_e1)
            lo -= 2.0;
        while (rule_snr(hi) < gamma_e1)
            hi += 2.0;
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it)
        {
            mid = 0.5 * (lo + hi);
            (rule_snr(mid) < gamma_e1 ? lo : hi) = mid;
        }
        return std::exp(0.5 * (lo + hi));
    }

    double quantize_ce_time(double tau_c, const SystemParams &p)
    {
        const double L = p.sample_len;
        double n = std::max(1.0, std::round(tau_c / L));
        while (n > 1.0 && n * L >= p.coherence_time)
            n -= 1.0;
        return n * L;
    }
}
