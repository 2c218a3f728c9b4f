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

#ifndef BSC_EXPERIMENTS_HPP
#define BSC_EXPERIMENTS_HPP

#include "bsc/config.hpp"

#include <functional>
#include <string>
#include <vector>

namespace bsc
{
    struct ResultRow
    {
        double sweep_value = 0;
        std::string metric;
        double value = 0;
        double std_error = 0;
        long trials = 0; // 0 for closed-form rows
    };

    // Each study of the evaluation suite, the sweep kind that produces it and the
    // metric families (names before any '@series' suffix) forming its data columns
    struct StudySpec
    {
        std::string_view name;
        SweepKind sweep;
        std::vector<std::string_view> metrics;
        int pilot_count = 0; // nonzero when the study pins K
    };
    const std::vector<StudySpec> &study_table();

    using RowSink = std::function<void(const ResultRow &)>;

    // Runs the configured sweep. Rows are passed to `sink` as they are produced, so a
    // caller can keep partial results when a later point throws.
    std::vector<ResultRow> run_experiment(const ExperimentConfig &cfg, const RowSink &sink = {});

    // Metric name with the series label appended, e.g. "snr_mc_ls@ce_snr_db=-5"
    std::string series_metric(std::string_view base, SweepKind kind, double series_value);

    // %#.12g
    std::string format_value(double x);

    void write_csv(const std::vector<ResultRow> &rows, const std::string &path);
    std::string csv_text(const std::vector<ResultRow> &rows);
}

#endif
