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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

// Covered tests:
// - Exit codes: success, validation error, runtime error, usage error
// - run writes the CSV, honours the flags and warns on unknown keys
// - optimize prints one key-value block

namespace fs = std::filesystem;

namespace
{
    struct Result
    {
        int code;
        std::string out;
    };

    Result sh(const std::string &args)
    {
        const std::string cmd = std::string(BSC_ESTIM_EXE) + " " + args + " 2>&1";
        FILE *p = popen(cmd.c_str(), "r");
        REQUIRE(p != nullptr);
        std::string out;
        char buf[4096];
        while (std::size_t n = fread(buf, 1, sizeof buf, p))
            out.append(buf, n);
        const int st = pclose(p);
        return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
    }

    fs::path scratch()
    {
        const auto d = fs::temp_directory_path() / "bsc_cli_test";
        fs::create_directories(d);
        return d;
    }

    std::string write(const fs::path &p, const std::string &text)
    {
        std::ofstream(p) << text;
        return p.string();
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream f(p);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }
}

TEST_CASE("CLI - run")
{
    const auto d = scratch();
    const auto cfg = write(d / "snr.cfg", "sweep = SNR_SWEEP\nsweep_grid = 0, 10\nestimator = LS\nwobble = 3\n");
    const auto out = (d / "snr.csv").string();
    const auto r = sh("run --config " + cfg + " --trials 30 --seed 4 --workers 2 --out " + out);
    CHECK(r.code == 0);
    CHECK(r.out.find("wobble") != std::string::npos);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("sweep_value,metric,value,std_error,trials\n", 0) == 0);
    CHECK(csv.find(",snr_mc_ls,") != std::string::npos);
    CHECK(csv.find(",30\n") != std::string::npos);
    CHECK(csv.back() == '\n');
}

TEST_CASE("CLI - exit codes")
{
    const auto d = scratch();
    const auto good = write(d / "good.cfg", "sweep = N_SWEEP\nsweep_grid = 4\n");
    CHECK(sh("run --config " + write(d / "bad.cfg", "trials = 0\n")).code == 1);
    CHECK(sh("run --config " + (d / "absent.cfg").string()).code == 1);
    CHECK(sh("run --config " + write(d / "syntax.cfg", "n_antennas 4\n")).code == 1);
    CHECK(sh("run --config " + good + " --out " + (d / "no_such_dir" / "x.csv").string()).code == 2);
    CHECK(sh("run --config " + good + " --out " + (d / "ok.csv").string()).code == 0);
    CHECK(sh("frobnicate").code == 1);
    CHECK(sh("run").code == 1);

    const auto single = write(d / "single.cfg", "n_antennas = 1\n");
    CHECK(sh("optimize --config " + single).code == 2);
}

TEST_CASE("CLI - optimize")
{
    const auto d = scratch();
    const auto r = sh("optimize --config " + write(d / "empty.cfg", ""));
    CHECK(r.code == 0);
    for (const char *k : {"\"tau_c_opt\"", "\"k_opt\"", "\"predicted_snr\"", "\"decision_path\"", "\"estimator_choice\""})
        CHECK(r.out.find(k) != std::string::npos);
    CHECK(r.out.find('{') == r.out.rfind('{'));

    const auto nolmmse = sh("optimize --no-prior --config " + (d / "empty.cfg").string());
    CHECK(nolmmse.out.find("\"LS\"") != std::string::npos);
}
