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

// Reference computations for the tests. They deliberately avoid the library's
// own algorithms: brute-force descent instead of the eigen-reduction, grids
// instead of bisection, explicit sums instead of closed forms.

#ifndef BSC_TEST_ORACLES_HPP
#define BSC_TEST_ORACLES_HPP

#include "bsc/channel_model.hpp"
#include "bsc/estimators.hpp"

#include <functional>
#include <random>
#include <vector>

namespace oracle
{
    using bsc::cdouble;
    using bsc::cmat;
    using bsc::cvec;
    using bsc::rmat;
    using bsc::rvec;

    inline cvec to_complex(const rvec &x)
    {
        const auto n = x.size() / 2;
        cvec h(n);
        for (Eigen::Index i = 0; i < n; ++i)
            h(i) = {x(i), x(n + i)};
        return h;
    }

    // Θ over the 2N real parameters, evaluated entry by entry
    inline double theta(const cmat &H, const rvec &x)
    {
        const cvec h = to_complex(x);
        double s = 0;
        for (Eigen::Index i = 0; i < H.rows(); ++i)
            for (Eigen::Index j = 0; j < H.cols(); ++j)
                s += std::norm(H(i, j) - h(i) * h(j));
        return s;
    }

    inline rvec central_gradient(const std::function<double(const rvec &)> &f, const rvec &x, double step)
    {
        rvec g(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i)
        {
            rvec a = x, b = x;
            a(i) += step;
            b(i) -= step;
            g(i) = (f(a) - f(b)) / (2.0 * step);
        }
        return g;
    }

    // BFGS with finite-difference gradients and Armijo backtracking
    inline rvec bfgs(const std::function<double(const rvec &)> &f, rvec x, int iters = 400)
    {
        const auto n = x.size();
        rmat Hinv = rmat::Identity(n, n);
        double fx = f(x);
        rvec g = central_gradient(f, x, 1e-7);
        for (int it = 0; it < iters && g.norm() > 1e-11; ++it)
        {
            rvec d = -Hinv * g;
            if (d.dot(g) >= 0)
            {
                Hinv.setIdentity();
                d = -g;
            }
            double t = 1.0, ft = f(x + t * d);
            while (ft > fx + 1e-4 * t * g.dot(d) && t > 1e-16)
            {
                t *= 0.5;
                ft = f(x + t * d);
            }
            if (t <= 1e-16)
                break;
            const rvec xn = x + t * d;
            const rvec gn = central_gradient(f, xn, 1e-7);
            const rvec s = xn - x, y = gn - g;
            const double sy = s.dot(y);
            if (sy > 1e-300)
            {
                const rmat I = rmat::Identity(n, n);
                Hinv = (I - s * y.transpose() / sy) * Hinv * (I - y * s.transpose() / sy) + s * s.transpose() / sy;
            }
            x = xn;
            fx = ft;
            g = gn;
        }
        return x;
    }

    // Multi-start local descent for min Θ. The problem is homogeneous
    // (Θ(cH, √c h) = c² Θ(H, h)) so the search runs on H/‖H‖.
    struct BruteForce
    {
        double objective;
        cvec h;
    };

    inline BruteForce brute_force_ls(const cmat &H, int starts, std::uint64_t seed)
    {
        const double scale = H.norm();
        const cmat Hn = H / scale;
        const auto N = H.rows();
        std::mt19937_64 eng(seed);
        std::normal_distribution<double> nd(0.0, 1.0);
        auto f = [&](const rvec &x) { return theta(Hn, x); };

        BruteForce best{std::numeric_limits<double>::infinity(), cvec()};
        const double spread = 1.0 / std::sqrt(double(std::sqrt(double(N * H.cols()))));
        for (int s = 0; s < starts; ++s)
        {
            rvec x0(2 * N);
            for (auto &v : x0)
                v = spread * nd(eng) / std::sqrt(2.0);
            const rvec x = bfgs(f, x0);
            const double v = f(x);
            if (v < best.objective)
                best = {v, to_complex(x)};
        }
        best.objective *= scale * scale;
        best.h *= std::sqrt(scale);
        return best;
    }

    // argmax of f over a uniform grid on (lo, hi) with n interior points; returns (x, step)
    inline std::pair<double, double> grid_argmax(const std::function<double(double)> &f, double lo, double hi, int n)
    {
        const double step = (hi - lo) / (n + 1);
        double bx = lo + step, bv = f(bx);
        for (int i = 2; i <= n; ++i)
        {
            const double x = lo + i * step, v = f(x);
            if (v > bv)
            {
                bv = v;
                bx = x;
            }
        }
        return {bx, step};
    }

    // Average SNR written through the spread of the estimate, σ² = sqrt(β² + K N0/(a0² E_c)),
    // nested as r(N-1)(r(N-2) + 4) + 2 with r = β/σ²
    inline double snr_sigma_form(double tau_c, double K, const bsc::SystemParams &p)
    {
        const double N = p.n_antennas, b = p.beta;
        const double Ec = p.tx_power * tau_c;
        const double sigma2 = std::sqrt(b * b + K * p.noise_var / (p.tag_amp_ce * p.tag_amp_ce * Ec));
        const double r = b / sigma2;
        const double pre = (p.coherence_time - tau_c) * p.tx_power * p.tag_amp_id * p.tag_amp_id * b * b / p.noise_var;
        return pre * (r * (N - 1.0) * (r * (N - 2.0) + 4.0) + 2.0);
    }

    // Unit-gain noisy LS instance at CE SNR gamma_e_db (noise per entry K/γ_E)
    struct Instance
    {
        bsc::ChannelRealization chan;
        cmat h_hat;
    };

    inline Instance noisy_ls_instance(int N, int K, double gamma_e_db, std::uint64_t seed,
                                      bsc::PilotBasis basis = bsc::PilotBasis::Identity)
    {
        bsc::SystemParams p = bsc::SystemParams::defaults();
        p.n_antennas = N;
        p.beta = 1.0;
        const double tc = 1e-4;
        p.noise_var = p.tag_amp_ce * p.tag_amp_ce * p.tx_power * tc / bsc::from_db(gamma_e_db);
        const auto chan = bsc::draw_channel(p, K, bsc::derive_seed(seed, bsc::Stream::Channel, 0));
        const cmat S = bsc::build_pilots(K, tc, p.tx_power, basis);
        const auto rx = bsc::backscatter(chan, S, p.tag_amp_ce, p.noise_var, bsc::derive_seed(seed, bsc::Stream::Noise, 0));
        return {chan, bsc::ls_matrix(rx, bsc::PilotConfig{K, tc}).h_hat_matrix};
    }
}

#endif
