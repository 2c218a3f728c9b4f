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

#include "bsc/snr_metrics.hpp"

#include <limits>
#include <stdexcept>

namespace bsc
{
    SnrReport make_report(double value_linear, double std_error, long trials)
    {
        SnrReport r;
        r.value_linear = value_linear;
        r.value_db = value_linear > 0.0 ? to_db(value_linear) : -std::numeric_limits<double>::infinity();
        r.std_error = std_error;
        r.trials = trials;
        return r;
    }

    double effective_snr_sample(const cvec &h_hat, const cvec &h, const SystemParams &params, double tau_c)
    {
        if (tau_c >= params.coherence_time)
            return 0.0;
        const double n2 = h_hat.squaredNorm();
        if (!(n2 > 0.0))
            return 0.0;
        const double g = std::norm(h_hat.dot(h)) / n2; // |ĥ^H h|² / ‖ĥ‖²
        const double a = params.tag_amp_id;
        return (params.coherence_time - tau_c) * params.tx_power * a * a / params.noise_var * g * g;
    }

    SnrReport snr_perfect_csi(const SystemParams &p)
    {
        const double N = p.n_antennas, a = p.tag_amp_id;
        return make_report(p.coherence_time * p.tx_power * a * a * N * (N + 1.0) * p.beta * p.beta / p.noise_var);
    }

    SnrReport snr_isotropic(const SystemParams &p)
    {
        const double a = p.tag_amp_id;
        return make_report(2.0 * p.coherence_time * p.tx_power * a * a * p.beta * p.beta / p.noise_var);
    }

    SnrReport snr_approx(double tau_c, double K, const SystemParams &p)
    {
        if (!(tau_c > 0.0 && tau_c <= p.coherence_time))
            throw std::domain_error("snr_approx: tau_c must lie in (0, coherence_time]");
        if (!(K >= 1.0 && K <= p.n_antennas))
            throw std::domain_error("snr_approx: K must lie in [1, n_antennas]");

        const double N = p.n_antennas, a0 = p.tag_amp_ce, ab = p.tag_amp_id, b2 = p.beta * p.beta;
        const double rho = 1.0 + p.noise_var * K / (b2 * a0 * a0 * p.tx_power * tau_c);
        const double g = (N - 1.0) * (N - 2.0) / rho + 4.0 * (N - 1.0) / std::sqrt(rho) + 2.0;
        return make_report((p.coherence_time - tau_c) * p.tx_power * ab * ab * b2 / p.noise_var * g);
    }

    double ce_snr(double tau_c, const SystemParams &p)
    {
        const double a0 = p.tag_amp_ce;
        return p.beta * p.beta * a0 * a0 * p.tx_power * tau_c / p.noise_var;
    }

    double ce_snr(const PilotConfig &cfg, const SystemParams &p) { return ce_snr(cfg.ce_time, p); }

    double beta_for_ce_snr(double gamma_e, double tau_c, const SystemParams &p)
    {
        if (!(gamma_e > 0.0) || !(tau_c > 0.0))
            throw std::domain_error("beta_for_ce_snr: inputs must be positive");
        const double a0 = p.tag_amp_ce;
        return std::sqrt(gamma_e * p.noise_var / (a0 * a0 * p.tx_power * tau_c));
    }

    SystemParams with_ce_snr_db(SystemParams p, double gamma_e_db, double tau_c)
    {
        p.beta = beta_for_ce_snr(from_db(gamma_e_db), tau_c, p);
        p.range = range_for_beta(p.carrier_freq, p.beta, p.pathloss_exp);
        return p;
    }

    SystemParams with_perfect_csi_snr_db(SystemParams p, double gamma_id_db)
    {
        const double N = p.n_antennas, a = p.tag_amp_id;
        p.beta = std::sqrt(from_db(gamma_id_db) * p.noise_var / (p.coherence_time * p.tx_power * a * a * N * (N + 1.0)));
        p.range = range_for_beta(p.carrier_freq, p.beta, p.pathloss_exp);
        return p;
    }

    RicianMoments approx_moments(Flavor flavor, const PilotConfig &cfg, const SystemParams &p, double h_hat_norm)
    {
        const double E0 = cfg.pilot_energy(p);
        const double b = p.beta, b2 = b * b;
        const double q = std::sqrt(b2 * E0 / (b2 * E0 + p.noise_var));
        RicianMoments m;
        m.flavor = flavor;
        if (flavor == Flavor::LS)
        {
            m.mu = q * h_hat_norm;
            m.sigma2 = b * (1.0 - q);
        }
        else
        {
            m.mu = h_hat_norm;
            m.sigma2 = b - b * q; // β - sqrt(β⁴E0/(β²E0+N0))
        }
        return m;
    }
}
