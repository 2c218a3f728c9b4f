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

#ifndef BSC_CHANNEL_MODEL_HPP
#define BSC_CHANNEL_MODEL_HPP

#include "bsc/types.hpp"

#include <cstdint>
#include <random>

namespace bsc
{
    inline constexpr double speed_of_light = 3.0e8;

    // Physical constants and reader configuration, SI units throughout
    struct SystemParams
    {
        int n_antennas = 20;          // N
        double coherence_time = 1e-3; // τ [s]
        double sample_len = 5e-6;     // L [s]
        double tx_power = 1.0;        // p_t [W]
        double tag_amp_ce = 0.78;     // a0 = |A - ζ0|
        double tag_amp_id = 0.3162;   // ā
        double noise_var = 1e-20;     // N0 [J]
        double carrier_freq = 915e6;  // f [Hz]
        double range = 100.0;         // d [m]
        double pathloss_exp = 2.5;    // ϱ
        double beta = 0.0;            // channel power gain, see derive_beta()

        // Defaults with beta derived from the path-loss inputs
        static SystemParams defaults();

        // Recompute beta from (carrier_freq, range, pathloss_exp)
        SystemParams &derive_beta();

        // Throws std::invalid_argument naming the offending field
        void validate() const;
    };

    // Pilot count K and CE time allocation τ_c
    struct PilotConfig
    {
        int pilot_count = 1; // K
        double ce_time = 0;  // τ_c [s], continuous

        void validate(const SystemParams &p) const;

        double energy(const SystemParams &p) const { return p.tx_power * ce_time; } // E_c
        double pilot_energy(const SystemParams &p) const                            // E_0
        {
            return p.tag_amp_ce * p.tag_amp_ce * energy(p) / pilot_count;
        }
    };

    struct ChannelRealization
    {
        cvec h;        // N
        cmat cascaded; // N x K, h h^T E_K

        static ChannelRealization from_vector(const cvec &h, int pilot_count);
    };

    struct ReceivedSignal
    {
        cmat y;            // N x K
        cmat pilot_scaled; // K x K, S_0 = a0 S
        double noise_var = 0;
    };

    // Ortho-basis used for the K x K pilot matrix; both are scaled unitary
    enum class PilotBasis
    {
        Identity,
        Dft
    };

    // ---- seeding ----

    // Independent sub-streams of one experiment seed
    enum class Stream : std::uint64_t
    {
        Channel = 0x43484e4cULL,
        Noise = 0x4e4f4953ULL,
        Aux = 0x41555821ULL
    };

    std::uint64_t splitmix64(std::uint64_t x);
    std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t index);

    // mt19937_64 with a circularly-symmetric complex Gaussian draw
    class Rng
    {
      public:
        explicit Rng(std::uint64_t seed) : engine_(seed) {}

        // CN(0, variance): real and imaginary parts each have variance/2
        cdouble complex_normal(double variance);
        double normal() { return normal_(engine_); }
        double uniform() { return uniform_(engine_); }

        std::mt19937_64 &engine() { return engine_; }

      private:
        std::mt19937_64 engine_;
        std::normal_distribution<double> normal_{0.0, 1.0};
        std::uniform_real_distribution<double> uniform_{0.0, 1.0};
    };

    // ---- operations ----

    double path_loss_beta(double f, double d, double rho);

    // Range that produces a given beta (inverse of path_loss_beta)
    double range_for_beta(double f, double beta, double rho);

    ChannelRealization draw_channel(const SystemParams &params, int pilot_count, Rng &rng);
    ChannelRealization draw_channel(const SystemParams &params, int pilot_count, std::uint64_t seed);

    cmat build_pilots(int K, double tau_c, double p_t, PilotBasis basis = PilotBasis::Identity);

    ReceivedSignal backscatter(const ChannelRealization &chan, const cmat &S, double a0, double N0, Rng &rng);
    ReceivedSignal backscatter(const ChannelRealization &chan, const cmat &S, double a0, double N0, std::uint64_t seed);
}

#endif
