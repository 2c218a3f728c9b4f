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

#include "bsc/transforms.hpp"

#include <stdexcept>

namespace bsc
{
    cmat sym(const cmat &M)
    {
        if (M.rows() != M.cols())
            throw std::invalid_argument("sym: matrix must be square");
        return M.transpose() + M;
    }

    rmat phi(const cmat &M)
    {
        const auto p = M.rows(), q = M.cols();
        rmat R(2 * p, 2 * q);
        R.topLeftCorner(p, q) = M.real();
        R.topRightCorner(p, q) = -M.imag();
        R.bottomLeftCorner(p, q) = -M.imag();
        R.bottomRightCorner(p, q) = -M.real();
        return R;
    }

    RealifiedSystem build_realified(const cmat &H_hat, int K)
    {
        const int N = int(H_hat.rows());
        if (K < 1 || K > N)
            throw std::domain_error("build_realified: K must lie in [1, N]");
        if (H_hat.cols() != K)
            throw std::invalid_argument("build_realified: H_hat must have K columns");

        RealifiedSystem rs;
        rs.k = K;
        rs.n = N;
        const cmat hk = H_hat.topRows(K).conjugate();
        rs.z_a = phi(sym(hk));
        // exact symmetry; sym() is symmetric up to the order of the two addends only
        rs.z_a = 0.5 * (rs.z_a + rs.z_a.transpose()).eval();
        if (K < N)
            rs.z_b = phi(H_hat.bottomRows(N - K).conjugate());
        else
            rs.z_b.resize(0, 2 * K);
        return rs;
    }

    rvec stack_real(const cvec &v)
    {
        rvec x(2 * v.size());
        x.head(v.size()) = v.real();
        x.tail(v.size()) = v.imag();
        return x;
    }

    cvec unstack_real(const rvec &x)
    {
        const auto n = x.size() / 2;
        cvec v(n);
        for (Eigen::Index i = 0; i < n; ++i)
            v(i) = {x(i), x(n + i)};
        return v;
    }
}
