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

#include "bsc/experiments.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace bsc
{
    std::string format_value(double x)
    {
        if (std::isnan(x))
            return "nan";
        if (std::isinf(x))
            return x > 0 ? "inf" : "-inf";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%#.12g", x);
        return buf;
    }

    std::string csv_text(const std::vector<ResultRow> &rows)
    {
        std::string s = "sweep_value,metric,value,std_error,trials\n";
        for (const auto &r : rows)
        {
            s += format_value(r.sweep_value);
            s += ',';
            s += r.metric;
            s += ',';
            s += format_value(r.value);
            s += ',';
            s += format_value(r.std_error);
            s += ',';
            s += std::to_string(r.trials);
            s += '\n';
        }
        return s;
    }

    void write_csv(const std::vector<ResultRow> &rows, const std::string &path)
    {
        namespace fs = std::filesystem;
        if (rows.empty())
            throw std::invalid_argument("write_csv: no rows to write");
        const fs::path dir = fs::path(path).parent_path();
        if (!dir.empty() && !fs::is_directory(dir))
            throw std::runtime_error("write_csv: output directory '" + dir.string() + "' does not exist");

        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::runtime_error("write_csv: cannot open '" + path + "' for writing");
        const std::string text = csv_text(rows);
        f.write(text.data(), std::streamsize(text.size()));
        f.flush();
        if (!f)
            throw std::runtime_error("write_csv: write failed for '" + path + "'");
    }
}
