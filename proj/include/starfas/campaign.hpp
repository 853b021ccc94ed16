// SPDX-License-Identifier: Apache-2.0
//
// starfas - outage and capacity analysis for phase-impaired STAR-RIS links
// with fluid-antenna users under rate splitting
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#ifndef STARFAS_CAMPAIGN_HPP
#define STARFAS_CAMPAIGN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "scenario_io.hpp"
#include "simkit.hpp"

namespace starfas
{
    inline constexpr const char *csv_header =
        "scenario_id,user,sweep_var,sweep_value,snr_db,op_exact,op_asym,op_mc,op_mc_hw,ac_c,ac_p,ac_sum,"
        "ac_mc_sum,ac_mc_hw,valid,err_est,seed";

    struct ResultRow
    {
        std::string scenario_id;
        User user = User::r;
        std::string sweep_var;
        std::string sweep_value;
        double snr_db = 0.0;
        std::optional<double> op_exact, op_asym, op_mc, op_mc_hw;
        std::optional<double> ac_c, ac_p, ac_sum, ac_mc_sum, ac_mc_hw;
        bool valid = true;
        std::optional<double> err_est;
        std::uint64_t seed = 0;
    };

    /// "name[/variant]@hash8", the hash taken over the resolved variant text.
    inline std::string scenario_tag(const Variant &v)
    {
        std::string id = v.config.scenario_id;
        if (!v.name.empty())
            id += "/" + v.name;
        return id + "@" + hash8(serialize_scenario(v.config));
    }

    namespace detail
    {
        struct Job
        {
            std::size_t variant = 0;
            User user = User::r;
            std::string sweep_value; // empty for SNR sweeps
        };

        inline std::vector<ResultRow> run_job(const ScenarioFile &f, const Job &job, std::uint64_t mc_seed)
        {
            const Variant &v = f.variants[job.variant];
            ScenarioConfig cfg = v.config;
            const bool snr_sweep = f.sweep.variable == "snr_db";
            if (!snr_sweep)
                apply_sweep_value(cfg, f.sweep.variable, job.sweep_value);
            const std::vector<double> &snrs = cfg.snr_grid_db;
            const std::string tag = scenario_tag(v);

            std::vector<ResultRow> rows(snrs.size());
            const bool want_op = f.sweep.has(Output::op), want_asym = f.sweep.has(Output::op_asym),
                       want_ac = f.sweep.has(Output::ac);
            const bool want_mc = f.sweep.has(Output::mc_op) || f.sweep.has(Output::mc_ac);

            std::optional<UserAnalysis> analysis;
            if (want_op || want_asym || want_ac)
                analysis.emplace(cfg, job.user);
            const UserModel um = analysis ? analysis->model() : derive_user_model(cfg, job.user);

            std::vector<McPoint> mc;
            if (want_mc)
            {
                McSettings s = f.mc;
                s.seed = mc_seed;
                s.threads = 1;
                mc = simulate_user(cfg, job.user, snrs, s);
            }

            for (std::size_t k = 0; k < snrs.size(); ++k)
            {
                ResultRow &r = rows[k];
                r.scenario_id = tag;
                r.user = job.user;
                r.sweep_var = f.sweep.variable;
                r.sweep_value = snr_sweep ? io::fmt(snrs[k]) : job.sweep_value;
                r.snr_db = snrs[k];
                r.valid = gain_thresholds(um, cfg.thresholds(job.user), snrs[k]).valid;
                r.seed = want_mc ? mc_seed : f.qmc.seed;
                if (want_op)
                {
                    const auto op = analysis->outage_probability(snrs[k], f.qmc);
                    r.op_exact = op.value;
                    r.err_est = op.err_estimate;
                }
                if (want_asym)
                    r.op_asym = analysis->outage_asymptotic(snrs[k], f.qmc).value;
                if (want_ac)
                {
                    const auto ac = analysis->average_capacity(snrs[k]);
                    r.ac_c = ac.common;
                    r.ac_p = ac.priv;
                    r.ac_sum = ac.sum;
                }
                if (f.sweep.has(Output::mc_op))
                {
                    r.op_mc = mc[k].op.value;
                    r.op_mc_hw = mc[k].op.half_width_95;
                }
                if (f.sweep.has(Output::mc_ac))
                {
                    r.ac_mc_sum = mc[k].ac_sum.value;
                    r.ac_mc_hw = mc[k].ac_sum.half_width_95;
                }
            }
            return rows;
        }
    }

    /// Evaluates every (variant, user, sweep value, SNR) point of a scenario file.
    /// Rows come back in that nesting order; MC streams are seeded per job from
    /// mc.seed and the job index, so the output does not depend on `threads`.
    inline std::vector<ResultRow> run_campaign(const ScenarioFile &f, unsigned threads = 0)
    {
        std::vector<detail::Job> jobs;
        const std::vector<std::string> values =
            f.sweep.variable == "snr_db" ? std::vector<std::string>{""} : f.sweep.values;
        for (std::size_t v = 0; v < f.variants.size(); ++v)
            for (User u : {User::r, User::t})
                for (const auto &sv : values)
                    jobs.push_back({v, u, sv});

        std::vector<std::vector<ResultRow>> results(jobs.size());
        parallel_for(jobs.size(), threads,
                     [&](std::size_t j) { results[j] = detail::run_job(f, jobs[j], derive_seed(f.mc.seed, j)); });

        std::vector<ResultRow> rows;
        for (auto &r : results)
            rows.insert(rows.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
        return rows;
    }

    inline std::string to_csv(const std::vector<ResultRow> &rows)
    {
        auto opt = [](const std::optional<double> &x) { return x ? io::fmt(*x) : std::string(); };
        std::string out = std::string(csv_header) + "\n";
        for (const auto &r : rows)
        {
            out += r.scenario_id + ',' + to_string(r.user) + ',' + r.sweep_var + ',' + r.sweep_value + ',' +
                   io::fmt(r.snr_db) + ',' + opt(r.op_exact) + ',' + opt(r.op_asym) + ',' + opt(r.op_mc) + ',' +
                   opt(r.op_mc_hw) + ',' + opt(r.ac_c) + ',' + opt(r.ac_p) + ',' + opt(r.ac_sum) + ',' +
                   opt(r.ac_mc_sum) + ',' + opt(r.ac_mc_hw) + ',' + (r.valid ? "true" : "false") + ',' +
                   opt(r.err_est) + ',' + std::to_string(r.seed) + '\n';
        }
        return out;
    }
}

#endif
