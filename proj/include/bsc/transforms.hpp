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

#ifndef BSC_TRANSFORMS_HPP
#define BSC_TRANSFORMS_HPP

#include "bsc/types.hpp"

namespace bsc
{
    // Real form of the stationarity conditions of the rank-one LS problem.
    //   z_a = Φ(H̄_EK), H̄_EK = sym(conj(Ĥ_K)), the leading K x K block
    //   z_b = Φ(conj(Ĥ_K̄)), trailing N-K rows
    // Φ(M) maps a real-stacked x = [Re v; Im v] onto the real-stacked conj(M v).
    struct RealifiedSystem
    {
        rmat z_a; // 2K x 2K, symmetric, traceless
        rmat z_b; // 2(N-K) x 2K
        int k = 0;
        int n = 0;
    };

    // M^T + M
    cmat sym(const cmat &M);

    // [[Re M, -Im M], [-Im M, -Re M]]
    rmat phi(const cmat &M);

    RealifiedSystem build_realified(const cmat &H_hat, int K);
    inline RealifiedSystem build_realified(const cmat &H_hat) { return build_realified(H_hat, int(H_hat.cols())); }

    // [Re v; Im v] and back
    rvec stack_real(const cvec &v);
    cvec unstack_real(const rvec &x);
}

#endif
