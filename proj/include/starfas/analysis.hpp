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


#ifndef STARFAS_ANALYSIS_HPP
#define STARFAS_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <limits>

#include "copula.hpp"
#include "model.hpp"
#include "qmc.hpp"
#include "specfun.hpp"

namespace starfas
{
    /// Received SINR of the common stream at channel gain g.
    inline double sinr_common(double g, const UserModel &um, double snr_db)
    {
        const double s = um.gain_scale(snr_db) * g;
        return um.power.alpha_c * s / (um.power.private_total() * s + 1.0);
    }

    /// Received SINR of the user's private stream; the other user's private stream interferes.
    inline double sinr_private(double g, const UserModel &um, double snr_db)
    {
        const double s = um.gain_scale(snr_db) * g;
        return um.power.private_power(um.user) * s / (um.power.private_power(other(um.user)) * s + 1.0);
    }

    /// SINR targets mapped to the gain domain. valid is false when a target can never be met.
    struct ThresholdSet
    {
        double gamma_th_c = 0.0; // linear SINR targets
        double gamma_th_p = 0.0;
        double gamma_hat_c = std::numeric_limits<double>::infinity();
        double gamma_hat_p = std::numeric_limits<double>::infinity();
        double gamma_th = std::numeric_limits<double>::infinity();
        bool valid = false;
    };

    inline ThresholdSet gain_thresholds(const UserModel &um, const Thresholds &th, double snr_db)
    {
        ThresholdSet out;
        out.gamma_th_c = db_to_linear(th.gamma_th_c_db);
        out.gamma_th_p = db_to_linear(th.gamma_th_p_db);
        const double scale = um.gain_scale(snr_db);
        const double den_c = um.power.alpha_c - um.power.private_total() * out.gamma_th_c;
        const double den_p = um.power.private_power(um.user) - um.power.private_power(other(um.user)) * out.gamma_th_p;
        out.valid = den_c > 0.0 && den_p > 0.0;
        if (den_c > 0.0)
            out.gamma_hat_c = out.gamma_th_c / (scale * den_c);
        if (den_p > 0.0)
            out.gamma_hat_p = out.gamma_th_p / (scale * den_p);
        out.gamma_th = std::max(out.gamma_hat_c, out.gamma_hat_p);
        return out;
    }

    struct OutageResult
    {
        double value = 1.0;
        double err_estimate = 0.0;
        bool valid = false;
        bool tolerance_met = true;
    };

    struct AsymptoticOutage
    {
        double value = 1.0;
        bool valid = false;
        bool clamped = false; // high-SNR expansion exceeded 1, low-SNR regime
    };

    struct Capacity
    {
        double common = 0.0;
        double priv = 0.0;
        double sum = 0.0;
    };

    /// Analytic performance of one (scenario, user) pair; also the input to the SNR loop.
    struct PerformanceResult
    {
        User user = User::r;
        double snr_db = 0.0;
        double op_exact = 1.0;
        double op_asymptotic = 1.0;
        double ac_common = 0.0;
        double ac_private = 0.0;
        double ac_sum = 0.0;
        bool valid = false;
        double err_estimate = 0.0;
        bool tolerance_met = true;
        bool asymptotic_clamped = false;
    };

    /// Leading term of the Gamma CDF at small gains, (m g / gbar)^m / Gamma(m + 1). Unclamped.
    inline double asymptotic_gamma_cdf(const GammaMarginal &mg, double g)
    {
        if (!(g > 0.0))
            return 0.0;
        const double m = mg.shape;
        return std::exp(m * std::log(m * g / mg.mean_gain) - std::lgamma(m + 1.0));
    }

    /// Mean of the best-port gain by the extreme-value quantile heuristic.
    inline double expected_max_gain(const BestPortGainLaw &law, AcSigma sigma)
    {
        const std::size_t n = law.port_count();
        const double gbar = law.marginal().mean_gain;
        if (n < 2)
            return gbar;
        const double m = law.marginal().shape;
        const double spread = sigma == AcSigma::paper ? gbar * gbar / m : gbar / std::sqrt(m);
        const double rho_eff = law.correlation().mean_off_diagonal();
        const double nd = static_cast<double>(n);
        return gbar + spread * std::sqrt(1.0 + rho_eff) * specfun::std_normal_quantile((nd - 1.0) / nd);
    }

    class UserAnalysis
    {
    public:
        UserAnalysis(const ScenarioConfig &cfg, User user)
            : model_(derive_user_model(cfg, user)), thresholds_(cfg.thresholds(user)), ac_sigma_(cfg.ac_sigma),
              law_(model_.marginal, model_.correlation)
        {
        }

        const UserModel &model() const noexcept { return model_; }
        const BestPortGainLaw &law() const noexcept { return law_; }

        ThresholdSet thresholds(double snr_db) const { return gain_thresholds(model_, thresholds_, snr_db); }

        /// P(common or private SINR below target) = F_max(gamma_th).
        OutageResult outage_probability(double snr_db, const QmcSettings &settings) const
        {
            const auto th = thresholds(snr_db);
            OutageResult out;
            out.valid = th.valid;
            if (!th.valid)
                return out;
            const auto r = max_gain_cdf(law_, th.gamma_th, settings);
            out.value = r.value;
            out.err_estimate = r.err_estimate;
            out.tolerance_met = r.tolerance_met;
            return out;
        }

        /// High-SNR outage: each marginal CDF replaced by (m g / gbar)^m / Gamma(m + 1).
        AsymptoticOutage outage_asymptotic(double snr_db, const QmcSettings &settings) const
        {
            const auto th = thresholds(snr_db);
            AsymptoticOutage out;
            out.valid = th.valid;
            if (!th.valid)
                return out;
            double u = asymptotic_gamma_cdf(model_.marginal, th.gamma_th);
            if (u > 1.0)
            {
                u = 1.0;
                out.clamped = true;
            }
            out.value = copula_diagonal(law_, u, settings).value;
            return out;
        }

        double expected_max_gain(AcSigma sigma) const { return starfas::expected_max_gain(law_, sigma); }

        Capacity average_capacity(double snr_db, AcSigma sigma) const
        {
            const double g = expected_max_gain(sigma);
            Capacity c;
            c.common = std::log2(1.0 + sinr_common(g, model_, snr_db));
            c.priv = std::log2(1.0 + sinr_private(g, model_, snr_db));
            c.sum = c.common + c.priv;
            return c;
        }

        Capacity average_capacity(double snr_db) const { return average_capacity(snr_db, ac_sigma_); }

        PerformanceResult evaluate(double snr_db, const QmcSettings &settings) const
        {
            PerformanceResult r;
            r.user = model_.user;
            r.snr_db = snr_db;
            const auto op = outage_probability(snr_db, settings);
            r.op_exact = op.value;
            r.err_estimate = op.err_estimate;
            r.tolerance_met = op.tolerance_met;
            r.valid = op.valid;
            const auto asym = outage_asymptotic(snr_db, settings);
            r.op_asymptotic = asym.value;
            r.asymptotic_clamped = asym.clamped;
            const auto ac = average_capacity(snr_db);
            r.ac_common = ac.common;
            r.ac_private = ac.priv;
            r.ac_sum = ac.sum;
            return r;
        }

    private:
        UserModel model_;
        Thresholds thresholds_;
        AcSigma ac_sigma_;
        BestPortGainLaw law_;
    };

    inline PerformanceResult evaluate(const ScenarioConfig &cfg, User user, double snr_db, const QmcSettings &settings)
    {
        return UserAnalysis(cfg, user).evaluate(snr_db, settings);
    }
}

#endif
