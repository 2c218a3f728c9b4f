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

#include "bsc/selftest.hpp"
#include "bsc/estimators.hpp"
#include "bsc/optimizer.hpp"
#include "bsc/snr_metrics.hpp"

#include <functional>
#include <string>

namespace bsc
{
    int run_selftest(std::ostream &os)
    {
        int failures = 0;
        auto check = [&](const std::string &name, const std::function<bool()> &fn) {
            bool ok = false;
            try
            {
                ok = fn();
            }
            catch (const std::exception &e)
            {
                os << "  exception: " << e.what() << "\n";
            }
            os << (ok ? "PASS " : "FAIL ") << name << "\n";
            failures += ok ? 0 : 1;
        };
        const SystemParams P = SystemParams::defaults();

        check("path loss at defaults", [&] { return std::abs(P.beta / 6.807389387418555e-9 - 1.0) < 1e-12; });
        check("threshold N=20 is 3.32 dB", [] { return std::abs(to_db(snr_threshold(20)) - 3.32) < 0.01; });
        check("threshold N=10 is 0.92", [] { return std::abs(snr_threshold(10) - 0.92) < 0.005; });
        check("isotropic / perfect CSI = 2/(N(N+1))", [&] {
            return std::abs(snr_isotropic(P).value_linear / snr_perfect_csi(P).value_linear - 2.0 / 420.0) < 1e-15;
        });
        check("closed-form SNR collapses to perfect CSI without noise", [&] {
            SystemParams q = P;
            q.noise_var = 1e-40;
            const double tc = 1e-4, ref = (q.coherence_time - tc) / q.coherence_time * snr_perfect_csi(q).value_linear;
            return std::abs(snr_approx(tc, 20, q).value_linear / ref - 1.0) < 1e-9;
        });
        check("noiseless recovery", [&] {
            for (int N : {1, 2, 3, 7, 20})
                for (int K : {1, (N + 1) / 2, N})
                {
                    const ChannelRealization c = draw_channel(P, K, derive_seed(7, Stream::Channel, N * 64 + K));
                    const VectorEstimate v = vector_estimate(c.cascaded);
                    const double e = std::min((v.h_hat - c.h).norm(), (v.h_hat + c.h).norm());
                    if (!(e <= 1e-8 * c.h.norm()))
                        return false;
                }
            return true;
        });
        check("optimal allocation beats a fine grid", [&] {
            for (int K : {1, 10, 20})
            {
                const double best = snr_approx(optimal_ta(K, P), K, P).value_linear;
                for (int i = 1; i < 2000; ++i)
                    if (snr_approx(P.coherence_time * i / 2000.0, K, P).value_linear > best * (1 + 1e-12))
                        return false;
            }
            return true;
        });
        check("LMMSE collapses to LS as N0 -> 0", [&] {
            const int N = 4, K = 3;
            const double tc = 1e-4, E0 = P.tag_amp_ce * P.tag_amp_ce * P.tx_power * tc / K;
            const double n0 = 1e-30 * P.beta * P.beta * E0;
            SystemParams q = P;
            q.n_antennas = N;
            const ChannelRealization c = draw_channel(q, K, std::uint64_t(11));
            const cmat S = build_pilots(K, tc, P.tx_power);
            const ReceivedSignal rx = backscatter(c, S, P.tag_amp_ce, n0, std::uint64_t(12));
            const PilotConfig cfg{K, tc};
            const cmat ls = ls_matrix(rx, cfg).h_hat_matrix;
            const cmat mm = lmmse_matrix(rx, cfg, prior_covariance(P.beta, N, K), n0).h_hat_matrix;
            return (ls - mm).norm() < 1e-6 * ls.norm();
        });
        return failures;
    }
}
