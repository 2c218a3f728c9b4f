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

#include "bsc/estimators.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace bsc
{
    namespace
    {
        constexpr double degenerate_eigenvalue = 1e-30;

        void check_dims(const ReceivedSignal &rx, const PilotConfig &cfg)
        {
            const auto K = cfg.pilot_count;
            if (rx.y.cols() != K || rx.pilot_scaled.rows() != K || rx.pilot_scaled.cols() != K)
                throw std::invalid_argument("received signal does not match the pilot configuration");
            if (rx.y.rows() < K)
                throw std::invalid_argument("pilot_count exceeds the number of antennas");
        }

        VectorEstimate degenerate_estimate(const cmat &H_hat, double lambda)
        {
            VectorEstimate v;
            v.h_hat = cvec::Zero(H_hat.rows());
            v.top_eigenvalue = std::max(lambda, 0.0);
            v.objective = H_hat.squaredNorm();
            v.closed_form_objective = v.objective;
            v.degenerate = true;
            return v;
        }

        // Rank-one candidate from a real eigen-pair of the reduced system: head scaled to
        // ‖h_K‖² = s, tail from the off-pilot rows
        cvec assemble(const RealifiedSystem &rs, const rvec &dir, double s)
        {
            const rvec x = std::sqrt(s) * dir.normalized();
            cvec h(rs.n);
            h.head(rs.k) = unstack_real(x);
            if (rs.n > rs.k)
                h.tail(rs.n - rs.k) = unstack_real(rs.z_b * x / s);
            return h;
        }

        // K = 1: Ĥ_11 = h_1², the rest of the column is h_i h_1
        VectorEstimate single_pilot(const cmat &H_hat)
        {
            const cdouble c = H_hat(0, 0);
            const double lambda = 2.0 * std::abs(c);
            if (!(lambda > degenerate_eigenvalue))
                return degenerate_estimate(H_hat, lambda);

            VectorEstimate v;
            v.top_eigenvalue = lambda;
            v.h_hat.resize(H_hat.rows());
            const cdouble h1 = std::sqrt(c);
            v.h_hat(0) = h1;
            const auto tail = H_hat.rows() - 1;
            if (tail > 0)
                v.h_hat.tail(tail) = H_hat.col(0).tail(tail) * (std::conj(h1) / std::abs(c));
            return v;
        }
    }

    MatrixEstimate ls_matrix(const ReceivedSignal &rx, const PilotConfig &cfg)
    {
        check_dims(rx, cfg);
        const double E0 = rx.pilot_scaled.squaredNorm() / cfg.pilot_count;
        if (!(E0 > 0.0))
            throw std::domain_error("ls_matrix: pilot energy is zero");

        MatrixEstimate est;
        est.h_hat_matrix = rx.y * rx.pilot_scaled.adjoint() / E0;
        est.flavor = Flavor::LS;
        est.pilot_config = cfg;
        return est;
    }

    PriorCovariance prior_covariance(double beta, int N, int K)
    {
        if (!(beta > 0.0))
            throw std::domain_error("prior_covariance: beta must be positive");
        if (K < 1 || K > N)
            throw std::domain_error("prior_covariance: K must lie in [1, N]");

        const int nk = N * K;
        const double b2 = beta * beta;
        PriorCovariance pc;
        pc.n = N;
        pc.k = K;
        pc.beta = beta;
        pc.c_hv = cmat::Zero(nk, nk);
        for (int j = 0; j < K; ++j)
            for (int i = 0; i < N; ++i)
            {
                const int a = i + N * j;
                pc.c_hv(a, a) += b2;
                if (i < K)
                    pc.c_hv(a, j + N * i) += b2; // swaps (i,j) <-> (j,i); i == j lands on the diagonal
            }

        // Exact factor: within the K x K block the pairs (i,j),(j,i) share one direction,
        // the diagonal carries 2β², off-pilot rows β². Zero modes are dropped.
        const int rank = nk - K * (K - 1) / 2;
        pc.factor = cmat::Zero(nk, rank);
        int col = 0;
        for (int j = 0; j < K; ++j)
            for (int i = 0; i < N; ++i)
            {
                if (i >= K)
                    pc.factor(i + N * j, col++) = beta;
                else if (i == j)
                    pc.factor(i + N * j, col++) = std::sqrt(2.0) * beta;
                else if (i < j)
                {
                    pc.factor(i + N * j, col) = beta;
                    pc.factor(j + N * i, col) = beta;
                    ++col;
                }
            }
        return pc;
    }

    LmmseFilter::LmmseFilter(const PriorCovariance &prior, const cmat &S0, double N0)
        : n_(prior.n), k_(prior.k)
    {
        if (S0.rows() != k_ || S0.cols() != k_)
            throw std::invalid_argument("LmmseFilter: pilot matrix must be K x K");
        if (N0 < 0.0)
            throw std::invalid_argument("LmmseFilter: N0 must be nonnegative");

        // A = S0v L with S0v = S0^T ⊗ I_N, i.e. column c of A is vec(reshape(L_c) S0).
        // Gain C S0v^H (S0v C S0v^H + N0 I)^-1 = L (A^H A + N0 I_r)^-1 A^H (push-through),
        // which stays well-conditioned as N0 -> 0 even though C is singular.
        const int nk = n_ * k_;
        const auto r = prior.factor.cols();
        cmat A(nk, r);
        for (Eigen::Index c = 0; c < r; ++c)
        {
            Eigen::Map<const cmat> Lc(prior.factor.col(c).data(), n_, k_);
            cmat prod = Lc * S0;
            A.col(c) = Eigen::Map<const cvec>(prod.data(), nk);
        }

        cmat gram = A.adjoint() * A;
        gram.diagonal().array() += N0;
        Eigen::LLT<cmat> llt(gram);
        if (llt.info() != Eigen::Success)
            throw std::runtime_error("LmmseFilter: regularized system is singular");
        gain_ = prior.factor * llt.solve(A.adjoint());
    }

    cmat LmmseFilter::apply(const cmat &y) const
    {
        if (y.rows() != n_ || y.cols() != k_)
            throw std::invalid_argument("LmmseFilter: received signal has wrong dimensions");
        const cvec v = gain_ * Eigen::Map<const cvec>(y.data(), y.size());
        return Eigen::Map<const cmat>(v.data(), n_, k_);
    }

    MatrixEstimate lmmse_matrix(const ReceivedSignal &rx, const PilotConfig &cfg, const LmmseFilter &filter)
    {
        check_dims(rx, cfg);
        MatrixEstimate est;
        est.h_hat_matrix = filter.apply(rx.y);
        est.flavor = Flavor::LMMSE;
        est.pilot_config = cfg;
        return est;
    }

    MatrixEstimate lmmse_matrix(const ReceivedSignal &rx, const PilotConfig &cfg, const PriorCovariance &prior, double N0)
    {
        check_dims(rx, cfg);
        if (prior.n != rx.y.rows() || prior.k != cfg.pilot_count)
            throw std::invalid_argument("lmmse_matrix: prior covariance dimensions do not match");
        return lmmse_matrix(rx, cfg, LmmseFilter(prior, rx.pilot_scaled, N0));
    }

    double ls_objective(const cmat &H_hat, const cvec &h)
    {
        const auto K = H_hat.cols();
        if (h.size() != H_hat.rows())
            throw std::invalid_argument("ls_objective: dimension mismatch");
        return (H_hat - h * h.head(K).transpose()).squaredNorm();
    }

    VectorEstimate closed_form_estimate(const cmat &H_hat)
    {
        const int K = int(H_hat.cols());
        const RealifiedSystem rs = build_realified(H_hat, K);
        Eigen::SelfAdjointEigenSolver<rmat> es(rs.z_a);
        const double lambda = es.eigenvalues()(2 * K - 1);
        if (!(lambda > degenerate_eigenvalue))
            return degenerate_estimate(H_hat, lambda);

        VectorEstimate v;
        v.top_eigenvalue = lambda;
        v.h_hat = assemble(rs, es.eigenvectors().col(2 * K - 1), 0.5 * lambda);
        v.objective = ls_objective(H_hat, v.h_hat);
        v.closed_form_objective = v.objective;
        return v;
    }

    cvec polish_ls(const cmat &H_hat, const cvec &start, int max_iterations)
    {
        const auto N = H_hat.rows(), K = H_hat.cols();
        cvec h = start;
        double f = ls_objective(H_hat, h);
        const double scale = std::max(H_hat.squaredNorm(), std::numeric_limits<double>::min());
        double mu = -1.0;

        for (int it = 0; it < max_iterations; ++it)
        {
            // residual R = Ĥ - h h_K^T is holomorphic in h, so the complex normal
            // equations are the real Gauss-Newton system in disguise
            const cmat R = H_hat - h * h.head(K).transpose();
            cvec g = -(R * h.head(K).conjugate());
            g.head(K) -= (h.adjoint() * R).transpose();

            const double s = h.head(K).squaredNorm(), t = h.squaredNorm();
            cmat JhJ(N, N);
            for (Eigen::Index m = 0; m < N; ++m)
                for (Eigen::Index n = 0; n < N; ++n)
                    JhJ(m, n) = h(m) * std::conj(h(n)) * double((n < K) + (m < K));
            JhJ.diagonal().array() += s;
            JhJ.diagonal().head(K).array() += t;

            if (mu < 0.0)
                mu = 1e-3 * JhJ.diagonal().real().maxCoeff();

            bool accepted = false;
            for (int tries = 0; tries < 30 && !accepted; ++tries)
            {
                cmat M = JhJ;
                M.diagonal().array() += mu;
                const cvec step = M.ldlt().solve(-g);
                const cvec trial = h + step;
                const double ft = ls_objective(H_hat, trial);
                if (ft < f)
                {
                    const bool tiny = step.norm() <= 1e-14 * h.norm() || f - ft <= 1e-17 * scale;
                    h = trial;
                    f = ft;
                    mu = std::max(mu / 3.0, 1e-300);
                    accepted = true;
                    if (tiny)
                        return h;
                }
                else
                    mu *= 4.0;
            }
            if (!accepted)
                break;
        }
        return h;
    }

    void canonicalize_sign(cvec &h)
    {
        const double thr = 1e-12 * h.norm();
        for (Eigen::Index i = 0; i < h.size(); ++i)
        {
            if (std::abs(h(i)) > thr)
            {
                const double re = h(i).real(), im = h(i).imag();
                if (re < 0.0 || (re == 0.0 && im < 0.0))
                    h = -h;
                return;
            }
        }
    }

    VectorEstimate vector_estimate(const cmat &H_hat, const VectorOptions &opt)
    {
        const int N = int(H_hat.rows()), K = int(H_hat.cols());
        if (K < 1 || K > N)
            throw std::domain_error("vector_estimate: estimate must be N x K with 1 <= K <= N");

        VectorEstimate v;
        if (K == 1)
        {
            v = single_pilot(H_hat);
            if (v.degenerate)
                return v;
            v.objective = ls_objective(H_hat, v.h_hat);
            v.closed_form_objective = v.objective;
        }
        else
        {
            v = closed_form_estimate(H_hat);
            if (v.degenerate)
                return v;
        }

        if (opt.refine && K > 1 && K < N)
        {
            // Seeds: every positive eigen-direction of z_a with the tail recovered for it,
            // plus the direction re-weighted by the tail energy. Polish the best few.
            const RealifiedSystem rs = build_realified(H_hat, K);
            Eigen::SelfAdjointEigenSolver<rmat> es(rs.z_a);
            const rmat zbtzb = rs.z_b.transpose() * rs.z_b;
            std::vector<std::pair<double, cvec>> seeds;
            for (int i = 2 * K - 1; i >= 0; --i)
            {
                const double w = es.eigenvalues()(i);
                if (!(w > degenerate_eigenvalue))
                    break;
                const double s = 0.5 * w;
                cvec a = assemble(rs, es.eigenvectors().col(i), s);
                seeds.emplace_back(ls_objective(H_hat, a), std::move(a));

                Eigen::SelfAdjointEigenSolver<rmat> em(rs.z_a + zbtzb / s);
                const rvec dir = em.eigenvectors().col(2 * K - 1);
                const double tail = (rs.z_b * dir).squaredNorm() / s;
                const double s2 = std::max(0.5 * (em.eigenvalues()(2 * K - 1) - tail), 1e-12 * s);
                cvec b = assemble(rs, dir, s2);
                seeds.emplace_back(ls_objective(H_hat, b), std::move(b));
            }
            std::stable_sort(seeds.begin(), seeds.end(),
                             [](const auto &x, const auto &y) { return x.first < y.first; });

            const int m = std::min<int>(std::max(opt.polish_seeds, 1), int(seeds.size()));
            for (int i = 0; i < m; ++i)
            {
                cvec p = polish_ls(H_hat, seeds[i].second, opt.max_iterations);
                const double f = ls_objective(H_hat, p);
                if (f < v.objective)
                {
                    v.objective = f;
                    v.h_hat = std::move(p);
                    v.refined = true;
                }
            }
        }

        canonicalize_sign(v.h_hat);
        v.objective = ls_objective(H_hat, v.h_hat);
        return v;
    }

    cvec mrt_precoder(const VectorEstimate &v)
    {
        const double n = v.h_hat.norm();
        if (!(n > 0.0))
            throw std::domain_error("mrt_precoder: zero channel estimate");
        return v.h_hat.conjugate() / n;
    }

    cvec mrc_combiner(const VectorEstimate &v)
    {
        const double n = v.h_hat.norm();
        if (!(n > 0.0))
            throw std::domain_error("mrc_combiner: zero channel estimate");
        return v.h_hat / n;
    }
}
