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

#ifndef BSC_TYPES_HPP
#define BSC_TYPES_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string_view>

namespace bsc
{
    using cdouble = std::complex<double>;
    using cvec = Eigen::VectorXcd;
    using cmat = Eigen::MatrixXcd;
    using rvec = Eigen::VectorXd;
    using rmat = Eigen::MatrixXd;

    // Which matrix-level estimator produced an estimate
    enum class Flavor
    {
        LS,
        LMMSE
    };

    constexpr std::string_view to_string(Flavor f)
    {
        return f == Flavor::LS ? "LS" : "LMMSE";
    }

    inline double to_db(double x) { return 10.0 * std::log10(x); }
    inline double from_db(double x) { return std::pow(10.0, x / 10.0); }
}

#endif
