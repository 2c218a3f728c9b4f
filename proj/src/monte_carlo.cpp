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

#include "bsc/monte_carlo.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

namespace bsc
{
    void parallel_for(long count, int workers, const std::function<void(long)> &fn)
    {
        if (count <= 0)
            return;
        long w = workers > 0 ? workers : long(std::max(1u, std::thread::hardware_concurrency()));
        w = std::min(w, count);
        if (w == 1)
        {
            for (long i = 0; i < count; ++i)
                fn(i);
            return;
        }

        std::exception_ptr err;
        std::mutex mtx;
        std::vector<std::thread> pool;
        pool.reserve(w);
        for (long t = 0; t < w; ++t)
        {
            const long lo = count * t / w, hi = count * (t + 1) / w;
            pool.emplace_back([&, lo, hi] {
                try
                {
                    for (long i = lo; i < hi; ++i)
                        fn(i);
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> lk(mtx);
                    if (!err)
                        err = std::current_exception();
                }
            });
        }
        for (auto &th : pool)
            th.join();
        if (err)
            std::rethrow_exception(err);
    }

    namespace
    {
        struct Neumaier
        {
            double sum = 0, c = 0;
            void add(double x)
            {
                const double t = sum + x;
                if (std::abs(sum) >= std::abs(x))
                    c += (sum - t) + x;
                else
                    c += (x - t) + sum;
                sum = t;
            }
            double value() const { return sum + c; }
        };
    }

    Stat summarize(const std::vector<double> &x)
    {
        Stat s;
        const auto n = x.size();
        if (n == 0)
            return s;
        Neumaier acc;
        for (double v : x)
            acc.add(v);
        s.mean = acc.value() / double(n);
        if (n > 1)
        {
            Neumaier sq;
            for (double v : x)
                sq.add((v - s.mean) * (v - s.mean));
            s.std_error = std::sqrt(sq.value() / double(n - 1) / double(n));
        }
        return s;
    }

    McSummary run_monte_carlo(const SystemParams &params, const PilotConfig &cfg, Flavor flavor, long trials,
                              std::uint64_t seed, const McOptions &opt)
    {
        params.validate();
        if (trials < 1)
            throw std::invalid_argument("trials must be >= 1");
        if (cfg.pilot_count < 1 || cfg.pilot_count > params.n_antennas)
            throw std::invalid_argument("pilot_count must lie in [1, n_antennas]");
        if (!(cfg.ce_time > 0.0))
            throw std::invalid_argument("ce_time must be positive");

        const cmat S = build_pilots(cfg.pilot_count, cfg.ce_time, params.tx_power, opt.basis);
        std::optional<LmmseFilter> filter;
        if (flavor == Flavor::LMMSE)
            filter.emplace(prior_covariance(params.beta, params.n_antennas, cfg.pilot_count),
                           params.tag_amp_ce * S, params.noise_var);

        std::vector<TrialOutcome> out(trials);
        parallel_for(trials, opt.workers, [&](long i) {
            Rng cr(derive_seed(seed, Stream::Channel, std::uint64_t(i)));
            const ChannelRealization chan = draw_channel(params, cfg.pilot_count, cr);
            Rng nr(derive_seed(seed, Stream::Noise, std::uint64_t(i)));
            const ReceivedSignal rx = backscatter(chan, S, params.tag_amp_ce, params.noise_var, nr);
            const MatrixEstimate est = flavor == Flavor::LS ? ls_matrix(rx, cfg) : lmmse_matrix(rx, cfg, *filter);
            const VectorEstimate v = vector_estimate(est, opt.vector);

            TrialOutcome &o = out[i];
            o.degenerate = v.degenerate;
            o.snr = effective_snr_sample(v.h_hat, chan.h, params, cfg.ce_time);
            const double n2 = v.h_hat.squaredNorm();
            o.gain = n2 > 0.0 ? std::norm(v.h_hat.dot(chan.h)) / n2 : 0.0;
            o.mse = std::min((chan.h - v.h_hat).squaredNorm(), (chan.h + v.h_hat).squaredNorm());
            o.matrix_err = (est.h_hat_matrix - chan.cascaded).squaredNorm();
        });

        McSummary s;
        s.trials = trials;
        std::vector<double> col(trials);
        auto gather = [&](auto member) {
            for (long i = 0; i < trials; ++i)
                col[i] = out[i].*member;
            return summarize(col);
        };
        s.snr = gather(&TrialOutcome::snr);
        s.gain = gather(&TrialOutcome::gain);
        s.mse = gather(&TrialOutcome::mse);
        s.matrix_err = gather(&TrialOutcome::matrix_err);
        s.degenerate = std::count_if(out.begin(), out.end(), [](const TrialOutcome &o) { return o.degenerate; });
        return s;
    }

    SnrReport mc_effective_snr(const SystemParams &params, const PilotConfig &cfg, Flavor flavor, long trials,
                               std::uint64_t seed, const McOptions &opt)
    {
        if (cfg.ce_time >= params.coherence_time)
            return make_report(0.0, 0.0, trials);
        const McSummary s = run_monte_carlo(params, cfg, flavor, trials, seed, opt);
        return make_report(s.snr.mean, s.snr.std_error, trials);
    }

    PowerReport received_power_metrics(Flavor flavor, const SystemParams &params, const PilotConfig &cfg, long trials,
                                       std::uint64_t seed, const McOptions &opt)
    {
        const McSummary s = run_monte_carlo(params, cfg, flavor, trials, seed, opt);
        PowerReport r;
        r.p_r = params.tx_power * s.gain.mean;
        r.p_r_std_error = params.tx_power * s.gain.std_error;
        r.p_r_perfect = params.n_antennas * params.tx_power * params.beta;
        r.p_r_isotropic = params.tx_power * params.beta;
        r.trials = trials;
        return r;
    }

    Stat estimate_mse(Flavor flavor, const SystemParams &params, const PilotConfig &cfg, long trials,
                      std::uint64_t seed, const McOptions &opt)
    {
        return run_monte_carlo(params, cfg, flavor, trials, seed, opt).mse;
    }
}
