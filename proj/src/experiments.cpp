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
#include "bsc/monte_carlo.hpp"
#include "bsc/optimizer.hpp"
#include "bsc/snr_metrics.hpp"

#include <cstdio>

namespace bsc
{
    const std::vector<StudySpec> &study_table()
    {
        static const std::vector<StudySpec> t = {
            {"received_power_full_pilots", SweepKind::SnrSweep, {"p_r_ls", "p_r_lmmse", "p_r_perfect", "p_r_isotropic"}},
            {"received_power_single_pilot", SweepKind::SnrSweep, {"p_r_ls", "p_r_lmmse", "p_r_perfect", "p_r_isotropic"}, 1},
            {"estimation_mse", SweepKind::SnrSweep, {"mse_ls", "mse_lmmse"}},
            {"snr_closed_form_vs_simulation", SweepKind::SnrSweep, {"snr_mc_ls", "snr_mc_lmmse", "snr_approx"}},
            {"snr_closed_form_vs_simulation_by_pilots", SweepKind::KSweep, {"snr_mc_ls", "snr_approx"}},
            {"snr_vs_ce_time_ls", SweepKind::TauSweep, {"snr_mc_ls", "snr_approx", "tau_ca"}},
            {"snr_vs_ce_time_lmmse", SweepKind::TauSweep, {"snr_mc_lmmse", "snr_approx", "tau_ca"}},
            {"normalized_power_vs_pilot_count", SweepKind::KSweep, {"p_r_norm_ls"}},
            {"snr_vs_pilot_count", SweepKind::KSweep, {"snr_mc_ls", "snr_mc_lmmse"}},
            {"joint_design_vs_antennas", SweepKind::NSweep, {"tau_c_jo", "k_jo"}},
            {"range_comparison_ls", SweepKind::Compare,
             {"snr_ls_fixed", "snr_ls_opt_ta", "snr_ls_joint", "snr_perfect", "snr_isotropic"}},
            {"antenna_comparison_lmmse", SweepKind::Joint,
             {"snr_lmmse_fixed", "snr_lmmse_opt_ta", "snr_lmmse_joint", "snr_perfect", "snr_isotropic"}},
            {"normalized_snr_comparison", SweepKind::Compare,
             {"gamma_id_db", "snr_isotropic_norm", "snr_ls_fixed_norm", "snr_lmmse_fixed_norm", "snr_ls_joint_norm",
              "snr_lmmse_joint_norm"}},
        };
        return t;
    }

    std::string series_metric(std::string_view base, SweepKind kind, double v)
    {
        std::string label;
        switch (kind)
        {
        case SweepKind::TauSweep: label = "range_m"; break;
        case SweepKind::KSweep:
        case SweepKind::NSweep: label = "ce_snr_db"; break;
        default: return std::string(base);
        }
        char buf[48];
        std::snprintf(buf, sizeof buf, "%g", v);
        return std::string(base) + "@" + label + "=" + buf;
    }

    namespace
    {
        std::string lower(std::string_view s)
        {
            std::string o(s);
            for (auto &c : o)
                c = char(std::tolower(static_cast<unsigned char>(c)));
            return o;
        }

        class Runner
        {
          public:
            Runner(const ExperimentConfig &cfg, const RowSink &sink) : cfg_(cfg), sink_(sink)
            {
                opt_.workers = cfg.workers;
                opt_.vector.refine = cfg.refine;
                if (cfg.estimator != EstimatorChoice::LMMSE)
                    flavors_.push_back(Flavor::LS);
                if (cfg.estimator != EstimatorChoice::LS)
                    flavors_.push_back(Flavor::LMMSE);
            }

            std::vector<ResultRow> run()
            {
                switch (cfg_.sweep)
                {
                case SweepKind::SnrSweep: snr_sweep(); break;
                case SweepKind::TauSweep: tau_sweep(); break;
                case SweepKind::KSweep: k_sweep(); break;
                case SweepKind::NSweep: n_sweep(); break;
                case SweepKind::Joint: joint(); break;
                case SweepKind::Compare: compare(); break;
                }
                return std::move(rows_);
            }

          private:
            const ExperimentConfig &cfg_;
            const RowSink &sink_;
            McOptions opt_;
            std::vector<Flavor> flavors_;
            std::vector<ResultRow> rows_;

            void emit(double x, std::string metric, double value, double se = 0.0, long trials = 0)
            {
                rows_.push_back({x, std::move(metric), value, se, trials});
                if (sink_)
                    sink_(rows_.back());
            }

            McSummary mc(const SystemParams &p, double tau_c, int K, Flavor f) const
            {
                return run_monte_carlo(p, PilotConfig{K, tau_c}, f, cfg_.trials, cfg_.seed, opt_);
            }

            double snap(double tau_c, const SystemParams &p) const
            {
                return cfg_.quantize_ce_time ? quantize_ce_time(tau_c, p) : tau_c;
            }

            void snr_sweep()
            {
                const int K = cfg_.effective_pilot_count();
                for (double g : cfg_.sweep_grid)
                {
                    const SystemParams p = with_ce_snr_db(cfg_.params, g, cfg_.ce_time);
                    const long T = cfg_.trials;
                    for (Flavor f : flavors_)
                    {
                        const std::string tag = lower(to_string(f));
                        const McSummary s = mc(p, cfg_.ce_time, K, f);
                        emit(g, "snr_mc_" + tag, s.snr.mean, s.snr.std_error, T);
                        emit(g, "p_r_" + tag, p.tx_power * s.gain.mean, p.tx_power * s.gain.std_error, T);
                        emit(g, "mse_" + tag, s.mse.mean, s.mse.std_error, T);
                    }
                    emit(g, "snr_approx", snr_approx(cfg_.ce_time, K, p).value_linear);
                    emit(g, "snr_perfect", snr_perfect_csi(p).value_linear);
                    emit(g, "snr_isotropic", snr_isotropic(p).value_linear);
                    emit(g, "p_r_perfect", p.n_antennas * p.tx_power * p.beta);
                    emit(g, "p_r_isotropic", p.tx_power * p.beta);
                    emit(g, "gamma_id_db", snr_perfect_csi(p).value_db);
                }
            }

            void tau_sweep()
            {
                const int K = cfg_.effective_pilot_count();
                for (double d : cfg_.series)
                {
                    SystemParams p = cfg_.params;
                    p.range = d;
                    p.derive_beta();
                    for (double tc : cfg_.sweep_grid)
                    {
                        for (Flavor f : flavors_)
                        {
                            const SnrReport r = mc_effective_snr(p, PilotConfig{K, tc}, f, cfg_.trials, cfg_.seed, opt_);
                            emit(tc, series_metric("snr_mc_" + lower(to_string(f)), cfg_.sweep, d), r.value_linear,
                                 r.std_error, cfg_.trials);
                        }
                        emit(tc, series_metric("snr_approx", cfg_.sweep, d), snr_approx(tc, K, p).value_linear);
                    }
                    const double ta = snap(optimal_ta(K, p), p);
                    emit(ta, series_metric("tau_ca", cfg_.sweep, d), snr_approx(ta, K, p).value_linear);
                }
            }

            void k_sweep()
            {
                for (double g : cfg_.series)
                {
                    const SystemParams p = with_ce_snr_db(cfg_.params, g, cfg_.ce_time);
                    for (Flavor f : flavors_)
                    {
                        const std::string tag = lower(to_string(f));
                        const double ref = mc(p, cfg_.ce_time, 1, f).gain.mean;
                        for (double kd : cfg_.sweep_grid)
                        {
                            const int K = int(kd);
                            const McSummary s = mc(p, cfg_.ce_time, K, f);
                            const long T = cfg_.trials;
                            emit(kd, series_metric("p_r_" + tag, cfg_.sweep, g), p.tx_power * s.gain.mean,
                                 p.tx_power * s.gain.std_error, T);
                            emit(kd, series_metric("p_r_norm_" + tag, cfg_.sweep, g), s.gain.mean / ref,
                                 s.gain.std_error / ref, T);
                            emit(kd, series_metric("snr_mc_" + tag, cfg_.sweep, g), s.snr.mean, s.snr.std_error, T);
                        }
                    }
                    for (double kd : cfg_.sweep_grid)
                        emit(kd, series_metric("snr_approx", cfg_.sweep, g),
                             snr_approx(cfg_.ce_time, kd, p).value_linear);
                }
            }

            void n_sweep()
            {
                for (double g : cfg_.series)
                    for (double nd : cfg_.sweep_grid)
                    {
                        SystemParams p = cfg_.params;
                        p.n_antennas = int(nd);
                        p.beta = beta_for_rule_snr(from_db(g), p);
                        p.range = range_for_beta(p.carrier_freq, p.beta, p.pathloss_exp);
                        const OptimizationOutcome o = joint_optimize(p);
                        const double tj = snap(o.tau_c_opt, p);
                        emit(nd, series_metric("tau_c_jo", cfg_.sweep, g), tj);
                        emit(nd, series_metric("k_jo", cfg_.sweep, g), o.k_opt);
                        emit(nd, series_metric("ce_snr_k1_db", cfg_.sweep, g), to_db(o.ce_snr_k1));
                        emit(nd, series_metric("threshold_db", cfg_.sweep, g), to_db(o.threshold));
                        emit(nd, series_metric("snr_joint_approx", cfg_.sweep, g), snr_approx(tj, o.k_opt, p).value_linear);
                    }
            }

            // fixed (τ_c0, N), optimal TA (τ_caN, N) and joint (τ_jo, K_jo) at one parameter set
            void schemes(double x, const SystemParams &p, bool normalized)
            {
                const int N = p.n_antennas;
                const double id = snr_perfect_csi(p).value_linear;
                const double iso = snr_isotropic(p).value_linear;
                const double ta = snap(optimal_ta(N, p), p);
                const OptimizationOutcome jo = joint_optimize(p);
                const double tj = snap(jo.tau_c_opt, p);
                const long T = cfg_.trials;

                emit(x, "gamma_id_db", to_db(id));
                emit(x, "snr_perfect", id);
                emit(x, "snr_isotropic", iso);
                emit(x, "tau_ca_n", ta);
                emit(x, "tau_c_jo", tj);
                emit(x, "k_jo", jo.k_opt);
                if (normalized)
                    emit(x, "snr_isotropic_norm", iso / id);
                for (Flavor f : flavors_)
                {
                    const std::string tag = lower(to_string(f));
                    const std::pair<const char *, std::pair<double, int>> cases[] = {
                        {"fixed", {cfg_.ce_time, N}}, {"opt_ta", {ta, N}}, {"joint", {tj, jo.k_opt}}};
                    for (const auto &[name, tk] : cases)
                    {
                        const McSummary s = mc(p, tk.first, tk.second, f);
                        const std::string m = "snr_" + tag + "_" + name;
                        emit(x, m, s.snr.mean, s.snr.std_error, T);
                        if (normalized)
                            emit(x, m + "_norm", s.snr.mean / id, s.snr.std_error / id, T);
                    }
                }
            }

            void joint()
            {
                for (double nd : cfg_.sweep_grid)
                {
                    SystemParams p = cfg_.params;
                    p.n_antennas = int(nd);
                    schemes(nd, p, false);
                }
            }

            void compare()
            {
                for (double d : cfg_.sweep_grid)
                {
                    SystemParams p = cfg_.params;
                    p.range = d;
                    p.derive_beta();
                    schemes(d, p, true);
                }
            }
        };
    }

    std::vector<ResultRow> run_experiment(const ExperimentConfig &cfg, const RowSink &sink)
    {
        ExperimentConfig c = cfg;
        c.finalize();
        return Runner(c, sink).run();
    }
}
