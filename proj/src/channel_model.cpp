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

#include "bsc/channel_model.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace bsc
{
    namespace
    {
        void require_positive(double v, const char *field)
        {
            if (!(v > 0.0) || !std::isfinite(v))
                throw std::invalid_argument(std::string(field) + " must be a positive finite number");
        }
    }

    SystemParams SystemParams::defaults()
    {
        SystemParams p;
        p.derive_beta();
        return p;
    }

    SystemParams &SystemParams::derive_beta()
    {
        beta = path_loss_beta(carrier_freq, range, pathloss_exp);
        return *this;
    }

    void SystemParams::validate() const
    {
        if (n_antennas < 1)
            throw std::invalid_argument("n_antennas must be >= 1");
        require_positive(coherence_time, "coherence_time");
        require_positive(sample_len, "sample_len");
        require_positive(tx_power, "tx_power");
        require_positive(noise_var, "noise_var");
        require_positive(carrier_freq, "carrier_freq");
        require_positive(range, "range");
        require_positive(pathloss_exp, "pathloss_exp");
        require_positive(beta, "beta");
        if (!(tag_amp_ce > 0.0 && tag_amp_ce <= 1.0))
            throw std::invalid_argument("tag_amp_ce must lie in (0, 1]");
        if (!(tag_amp_id > 0.0 && tag_amp_id <= 1.0))
            throw std::invalid_argument("tag_amp_id must lie in (0, 1]");
    }

    void PilotConfig::validate(const SystemParams &p) const
    {
        if (pilot_count < 1 || pilot_count > p.n_antennas)
            throw std::invalid_argument("pilot_count must lie in [1, n_antennas]");
        if (!(ce_time > 0.0 && ce_time < p.coherence_time))
            throw std::invalid_argument("ce_time must lie in (0, coherence_time)");
    }

    ChannelRealization ChannelRealization::from_vector(const cvec &h, int pilot_count)
    {
        if (pilot_count < 1 || pilot_count > h.size())
            throw std::invalid_argument("pilot_count must lie in [1, N]");
        ChannelRealization c;
        c.h = h;
        c.cascaded = h * h.head(pilot_count).transpose();
        return c;
    }

    // SplitMix64 finalizer (Steele, Lea, Flood 2014)
    std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t index)
    {
        std::uint64_t s = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(stream)));
        return splitmix64(s ^ splitmix64(index + 0x632be59bd9b4e019ULL));
    }

    cdouble Rng::complex_normal(double variance)
    {
        const double s = std::sqrt(0.5 * variance);
        const double re = normal_(engine_);
        const double im = normal_(engine_);
        return {s * re, s * im};
    }

    double path_loss_beta(double f, double d, double rho)
    {
        if (!(f > 0.0) || !(d > 0.0) || !(rho > 0.0))
            throw std::domain_error("path_loss_beta: inputs must be positive");
        const double w = 4.0 * std::numbers::pi * f;
        return speed_of_light * speed_of_light / (w * w * std::pow(d, rho));
    }

    double range_for_beta(double f, double beta, double rho)
    {
        if (!(f > 0.0) || !(beta > 0.0) || !(rho > 0.0))
            throw std::domain_error("range_for_beta: inputs must be positive");
        const double w = 4.0 * std::numbers::pi * f;
        return std::pow(speed_of_light * speed_of_light / (w * w * beta), 1.0 / rho);
    }

    ChannelRealization draw_channel(const SystemParams &params, int pilot_count, Rng &rng)
    {
        params.validate();
        cvec h(params.n_antennas);
        for (auto &x : h)
            x = rng.complex_normal(params.beta);
        return ChannelRealization::from_vector(h, pilot_count);
    }

    ChannelRealization draw_channel(const SystemParams &params, int pilot_count, std::uint64_t seed)
    {
        Rng rng(seed);
        return draw_channel(params, pilot_count, rng);
    }

    cmat build_pilots(int K, double tau_c, double p_t, PilotBasis basis)
    {
        if (K < 1)
            throw std::domain_error("build_pilots: K must be >= 1");
        if (!(tau_c > 0.0) || !(p_t > 0.0))
            throw std::domain_error("build_pilots: tau_c and p_t must be positive");

        const double amp = std::sqrt(p_t * tau_c / K);
        if (basis == PilotBasis::Identity)
            return cmat::Identity(K, K) * amp;

        // Unitary DFT, scaled
        cmat S(K, K);
        const double s = amp / std::sqrt(double(K));
        for (int r = 0; r < K; ++r)
            for (int c = 0; c < K; ++c)
            {
                const double ang = -2.0 * std::numbers::pi * double((long long)r * c % K) / K;
                S(r, c) = std::polar(s, ang);
            }
        return S;
    }

    ReceivedSignal backscatter(const ChannelRealization &chan, const cmat &S, double a0, double N0, Rng &rng)
    {
        const auto K = chan.cascaded.cols();
        if (S.rows() != K || S.cols() != K)
            throw std::invalid_argument("backscatter: pilot matrix must be K x K");
        if (!(a0 > 0.0 && a0 <= 1.0))
            throw std::invalid_argument("backscatter: a0 must lie in (0, 1]");
        if (N0 < 0.0)
            throw std::invalid_argument("backscatter: N0 must be nonnegative");

        ReceivedSignal rx;
        rx.pilot_scaled = a0 * S;
        rx.noise_var = N0;
        rx.y = chan.cascaded * rx.pilot_scaled;
        if (N0 > 0.0)
        {
            // column-major fill keeps the draw order stable across K
            for (Eigen::Index j = 0; j < rx.y.cols(); ++j)
                for (Eigen::Index i = 0; i < rx.y.rows(); ++i)
                    rx.y(i, j) += rng.complex_normal(N0);
        }
        return rx;
    }

    ReceivedSignal backscatter(const ChannelRealization &chan, const cmat &S, double a0, double N0, std::uint64_t seed)
    {
        Rng rng(seed);
        return backscatter(chan, S, a0, N0, rng);
    }
}
