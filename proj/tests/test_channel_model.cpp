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

#include <catch_amalgamated.hpp>

#include "bsc/channel_model.hpp"

#include <numbers>

// Covered tests:
// - Path-loss gain: frozen high-precision value, unit range, inverse-square scaling, inverse
// - Parameter validation
// - Channel statistics: second and fourth moments, determinism, cascaded structure, rank one
// - Pilot energy and orthogonality for identity and DFT bases
// - Received signal: noiseless, single-path, noise floor

using namespace bsc;
using Catch::Approx;

TEST_CASE("Channel model - Path loss")
{
    // 40-digit evaluation of (3e8)² / ((4π·915e6)² · 100^2.5)
    const double frozen = 6.807389387418554920980883e-9;
    CHECK(std::abs(path_loss_beta(915e6, 100.0, 2.5) / frozen - 1.0) < 1e-13);
    CHECK(std::abs(SystemParams::defaults().beta / frozen - 1.0) < 1e-13);

    const double f = 2.4e9;
    const double unit = std::pow(3e8 / (4.0 * std::numbers::pi * f), 2);
    for (double rho : {1.7, 2.0, 3.3})
        CHECK(path_loss_beta(f, 1.0, rho) == Approx(unit).epsilon(1e-14));

    CHECK(path_loss_beta(f, 80.0, 2.0) / path_loss_beta(f, 40.0, 2.0) == Approx(0.25).epsilon(1e-14));

    for (double d : {3.0, 100.0, 742.5})
        CHECK(range_for_beta(f, path_loss_beta(f, d, 2.5), 2.5) == Approx(d).epsilon(1e-12));

    CHECK_THROWS_AS(path_loss_beta(0.0, 1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(path_loss_beta(1e9, -1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(path_loss_beta(1e9, 1.0, 0.0), std::domain_error);
}

TEST_CASE("Channel model - Parameter validation")
{
    SystemParams p = SystemParams::defaults();
    REQUIRE_NOTHROW(p.validate());

    auto bad = [&](auto mutate) {
        SystemParams q = p;
        mutate(q);
        return q;
    };
    CHECK_THROWS_AS(bad([](SystemParams &q) { q.n_antennas = 0; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](SystemParams &q) { q.tag_amp_ce = 1.2; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](SystemParams &q) { q.tag_amp_id = 0.0; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](SystemParams &q) { q.noise_var = -1.0; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](SystemParams &q) { q.beta = 0.0; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](SystemParams &q) { q.coherence_time = 0.0; }).validate(), std::invalid_argument);

    CHECK_THROWS_AS((PilotConfig{0, 1e-4}).validate(p), std::invalid_argument);
    CHECK_THROWS_AS((PilotConfig{21, 1e-4}).validate(p), std::invalid_argument);
    CHECK_THROWS_AS((PilotConfig{4, 1e-3}).validate(p), std::invalid_argument);
    CHECK_NOTHROW((PilotConfig{4, 1e-4}).validate(p));

    const PilotConfig c{4, 1e-4};
    CHECK(c.energy(p) == Approx(1e-4));
    CHECK(c.pilot_energy(p) == Approx(0.78 * 0.78 * 1e-4 / 4));
}

TEST_CASE("Channel model - Seeding")
{
    // reference first output of SplitMix64 seeded with 0
    CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
    CHECK(derive_seed(1, Stream::Channel, 0) != derive_seed(1, Stream::Noise, 0));
    CHECK(derive_seed(1, Stream::Channel, 0) != derive_seed(1, Stream::Channel, 1));
    CHECK(derive_seed(1, Stream::Channel, 5) == derive_seed(1, Stream::Channel, 5));
}

TEST_CASE("Channel model - Channel draws")
{
    SystemParams p = SystemParams::defaults();
    p.n_antennas = 4;
    const double b = p.beta;

    SECTION("Determinism")
    {
        const auto a = draw_channel(p, 2, std::uint64_t(42));
        const auto c = draw_channel(p, 2, std::uint64_t(42));
        CHECK(a.h == c.h);
        CHECK(a.cascaded == c.cascaded);
        CHECK(draw_channel(p, 2, std::uint64_t(43)).h != a.h);
    }

    SECTION("Cascaded structure and rank one")
    {
        for (int K = 1; K <= 4; ++K)
        {
            const auto c = draw_channel(p, K, std::uint64_t(100 + K));
            REQUIRE(c.cascaded.rows() == 4);
            REQUIRE(c.cascaded.cols() == K);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < K; ++j)
                    CHECK(c.cascaded(i, j) == c.h(i) * c.h(j));
            if (K > 1)
            {
                Eigen::JacobiSVD<cmat> svd(c.cascaded);
                CHECK(svd.singularValues()(1) < 1e-10 * svd.singularValues()(0));
            }
        }
    }

    SECTION("Second and fourth moments")
    {
        const int draws = 100000;
        Rng rng(2024);
        double m2 = 0, m4 = 0, re2 = 0;
        for (int t = 0; t < draws; ++t)
        {
            const auto c = draw_channel(p, 1, rng);
            m2 += std::norm(c.h(0));
            re2 += c.h(1).real() * c.h(1).real();
            m4 += std::pow(c.h.squaredNorm(), 2);
        }
        CHECK(m2 / draws == Approx(b).epsilon(0.02));
        CHECK(re2 / draws == Approx(b / 2).epsilon(0.02));
        // ‖h‖² is Gamma(N, β): E‖h‖⁴ = N(N+1)β²
        CHECK(m4 / draws == Approx(4.0 * 5.0 * b * b).epsilon(0.03));
    }
}

TEST_CASE("Channel model - Pilots")
{
    const double p_t = 1.0, tc = 1e-4;
    const cmat s1 = build_pilots(1, tc, p_t);
    REQUIRE(s1.rows() == 1);
    CHECK(s1(0, 0).real() == Approx(std::sqrt(p_t * tc)));
    CHECK(s1(0, 0).imag() == 0.0);

    for (auto basis : {PilotBasis::Identity, PilotBasis::Dft})
        for (int K : {1, 2, 4, 7, 20})
        {
            const cmat S = build_pilots(K, tc, p_t, basis);
            CHECK(S.squaredNorm() == Approx(p_t * tc).epsilon(1e-10));
            const cmat G = S * S.adjoint();
            const cmat ref = cmat::Identity(K, K) * (p_t * tc / K);
            CHECK((G - ref).norm() < 1e-10 * ref.norm());
            cmat off = G;
            off.diagonal().setZero();
            CHECK(off.cwiseAbs().maxCoeff() < 1e-12 * p_t * tc / K);
        }

    CHECK_THROWS_AS(build_pilots(0, tc, p_t), std::domain_error);
}

TEST_CASE("Channel model - Backscatter")
{
    SystemParams p = SystemParams::defaults();
    p.n_antennas = 5;
    const double a0 = p.tag_amp_ce, tc = 1e-4;

    SECTION("Noiseless")
    {
        const auto c = draw_channel(p, 3, std::uint64_t(1));
        const cmat S = build_pilots(3, tc, p.tx_power, PilotBasis::Dft);
        const auto rx = backscatter(c, S, a0, 0.0, std::uint64_t(2));
        CHECK(rx.y == c.cascaded * (a0 * S));
        const cmat G = rx.pilot_scaled * rx.pilot_scaled.adjoint();
        CHECK((G - cmat::Identity(3, 3) * (a0 * a0 * p.tx_power * tc / 3)).norm() < 1e-10 * G.norm());
    }

    SECTION("Single-path channel")
    {
        cvec h = cvec::Zero(5);
        h(0) = 1.0;
        const auto c = ChannelRealization::from_vector(h, 5);
        const double amp = 0.37;
        const auto rx = backscatter(c, cmat::Identity(5, 5) * (amp / a0), a0, 0.0, std::uint64_t(0));
        cmat ref = cmat::Zero(5, 5);
        ref(0, 0) = amp;
        CHECK((rx.y - ref).norm() < 1e-15);
    }

    SECTION("Noise floor")
    {
        const double N0 = 1e-20;
        const auto c = draw_channel(p, 2, std::uint64_t(5));
        const cmat S = build_pilots(2, tc, p.tx_power);
        double acc = 0;
        long n = 0;
        for (int t = 0; t < 10000; ++t)
        {
            const auto rx = backscatter(c, S, a0, N0, derive_seed(9, Stream::Noise, t));
            acc += (rx.y - c.cascaded * rx.pilot_scaled).squaredNorm();
            n += rx.y.size();
        }
        CHECK(acc / n == Approx(N0).epsilon(0.03));
    }

    SECTION("Contract violations")
    {
        const auto c = draw_channel(p, 2, std::uint64_t(5));
        CHECK_THROWS_AS(backscatter(c, build_pilots(3, tc, 1.0), a0, 1e-20, std::uint64_t(1)), std::invalid_argument);
        CHECK_THROWS_AS(backscatter(c, build_pilots(2, tc, 1.0), 0.0, 1e-20, std::uint64_t(1)), std::invalid_argument);
    }
}
