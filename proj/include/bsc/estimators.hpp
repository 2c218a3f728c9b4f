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

#ifndef BSC_ESTIMATORS_HPP
#define BSC_ESTIMATORS_HPP

#include "bsc/channel_model.hpp"
#include "bsc/transforms.hpp"

namespace bsc
{
    struct MatrixEstimate
    {
        cmat h_hat_matrix; // N x K
        Flavor flavor = Flavor::LS;
        PilotConfig pilot_config;
    };

    struct VectorEstimate
    {
        cvec h_hat;
        double top_eigenvalue = 0;        // λ of z_a
        double objective = 0;             // ‖Ĥ - ĥ ĥ^T E_K‖²
        double closed_form_objective = 0; // the same, at the eigen-reduction point
        bool degenerate = false;
        bool refined = false; // true when the refinement improved on the closed form
    };

    struct VectorOptions
    {
        // 1 < K < N: the eigen-reduction point is not a stationary point of the
        // LS objective in general; polish it (and alternative seeds) by
        // Levenberg-Marquardt. The result is never worse than the closed form.
        bool refine = true;
        int polish_seeds = 2;
        int max_iterations = 200;
    };

    // vec over column-major N x K: index i + N*j holds h_i h_j
    struct PriorCovariance
    {
        cmat c_hv;   // NK x NK, β²(δ_ik δ_jl + δ_il δ_jk)
        cmat factor; // NK x r, c_hv = factor factor^H, full column rank
        int n = 0;
        int k = 0;
        double beta = 0;
    };

    // Precomputed LMMSE map vec(Y) -> vec(Ĥ_M) for fixed prior, pilots and N0
    class LmmseFilter
    {
      public:
        LmmseFilter(const PriorCovariance &prior, const cmat &pilot_scaled, double N0);

        cmat apply(const cmat &y) const;
        const cmat &gain() const { return gain_; }

      private:
        cmat gain_; // NK x NK
        int n_, k_;
    };

    MatrixEstimate ls_matrix(const ReceivedSignal &rx, const PilotConfig &cfg);

    PriorCovariance prior_covariance(double beta, int N, int K);

    MatrixEstimate lmmse_matrix(const ReceivedSignal &rx, const PilotConfig &cfg, const LmmseFilter &filter);
    MatrixEstimate lmmse_matrix(const ReceivedSignal &rx, const PilotConfig &cfg, const PriorCovariance &prior, double N0);

    // ‖Ĥ - h h^T E_K‖²
    double ls_objective(const cmat &H_hat, const cvec &h);

    VectorEstimate vector_estimate(const cmat &H_hat, const VectorOptions &opt = {});
    inline VectorEstimate vector_estimate(const MatrixEstimate &est, const VectorOptions &opt = {})
    {
        return vector_estimate(est.h_hat_matrix, opt);
    }

    // Eigen-reduction closed form on the general path (no fast paths, no refinement)
    VectorEstimate closed_form_estimate(const cmat &H_hat);

    // Levenberg-Marquardt on the LS objective from a given start
    cvec polish_ls(const cmat &H_hat, const cvec &start, int max_iterations = 200);

    // Global sign convention; all metrics are invariant to it
    void canonicalize_sign(cvec &h);

    cvec mrt_precoder(const VectorEstimate &v);
    cvec mrc_combiner(const VectorEstimate &v);
}

#endif
