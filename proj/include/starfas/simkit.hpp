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


#ifndef STARFAS_SIMKIT_HPP
#define STARFAS_SIMKIT_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "linalg.hpp"
#include "model.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace starfas
{
    struct McEstimate
    {
        std::string metric;
        double value = 0.0;
        double half_width_95 = 0.0;
        std::uint64_t samples = 0;
        std::uint64_t seed = 0;
        bool reliable = true; // false for outage estimates below 1e-4
    };

    struct McSettings
    {
        std::uint64_t samples = 100000;
        std::uint64_t seed = 1;
        unsigned threads = 0;
        std::uint64_t chunk_size = 8192; // samples per RNG stream

        void validate() const
        {
            if (samples < 1)
                throw DomainError("mc: sample count must be positive");
            if (chunk_size < 1)
                throw DomainError("mc: chunk size must be positive");
        }
    };

    inline constexpr double mc_reliable_floor = 1e-4;

    // Best-Fisher rejection sampler for von Mises(0, kappa)
    inline double sample_von_mises(double kappa, Engine &engine)
    {
        constexpr double pi = std::numbers::pi;
        if (!(kappa >= 0.0))
            throw DomainError("sample_von_mises: concentration must be nonnegative");
        if (kappa < 1e-8)
            return pi * (2.0 * uniform_open01(engine) - 1.0);
        if (kappa > 1e6)
        {
            // wrapped normal limit, sigma = kappa^-1/2
            std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(kappa));
            return std::remainder(normal(engine), 2.0 * pi);
        }
        const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
        const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
        const double r = (1.0 + rho * rho) / (2.0 * rho);
        for (;;)
        {
            const double u1 = uniform01(engine);
            const double u2 = uniform_open01(engine);
            const double u3 = uniform01(engine);
            const double z = std::cos(pi * u1);
            const double f = (1.0 + r * z) / (r + z);
            const double c = kappa * (r - f);
            if (c * (2.0 - c) - u2 > 0.0 || std::log(c / u2) + 1.0 - c >= 0.0)
            {
                const double theta = std::acos(std::clamp(f, -1.0, 1.0));
                return u3 > 0.5 ? theta : -theta;
            }
        }
    }

    inline std::vector<double> sample_von_mises(double kappa, std::size_t count, std::uint64_t seed)
    {
        Engine engine(seed);
        std::vector<double> out(count);
        for (auto &x : out)
            x = sample_von_mises(kappa, engine);
        return out;
    }

    /// Physical channel generator: Rician BS-RIS hop per element, port-correlated Rician
    /// RIS-user hop (shared LOS phase, correlated diffuse field), von Mises residual phase.
    class ChannelSampler
    {
    public:
        ChannelSampler(const ScenarioConfig &cfg, User user)
            : k_elements_(cfg.k_elements), beta_(cfg.beta(user)), phase_(cfg.phase_error),
              chol_(cholesky_psd(port_correlation(cfg.grid(user), cfg.kernel, cfg.copula_nu).matrix).lower)
        {
            if (cfg.k_elements < 1)
                throw ModelDomainError("channel sampler: element count must be positive");
            if (!(cfg.rice_k >= 0.0))
                throw ModelDomainError("channel sampler: Rice factor must be nonnegative");
            los_ = std::sqrt(cfg.rice_k / (cfg.rice_k + 1.0));
            nlos_ = std::sqrt(1.0 / (cfg.rice_k + 1.0));
        }

        std::size_t ports() const noexcept { return chol_.size(); }

        /// Equivalent channels H^n of all ports for one realization.
        void draw(Engine &engine, std::span<std::complex<double>> h)
        {
            constexpr double two_pi = 2.0 * std::numbers::pi;
            const std::size_t n = ports();
            std::fill(h.begin(), h.end(), std::complex<double>{});
            z_re_.resize(n);
            z_im_.resize(n);
            const double inv_sqrt2 = std::sqrt(0.5);
            for (int k = 0; k < k_elements_; ++k)
            {
                const std::complex<double> hb =
                    los_ * std::polar(1.0, two_pi * uniform01(engine)) +
                    nlos_ * inv_sqrt2 * std::complex<double>(normal_(engine), normal_(engine));
                const double amp_b = std::abs(hb);

                const std::complex<double> los_u = los_ * std::polar(1.0, two_pi * uniform01(engine));
                for (std::size_t i = 0; i < n; ++i)
                {
                    z_re_[i] = normal_(engine);
                    z_im_[i] = normal_(engine);
                }

                const double theta = phase_.kind == PhaseErrorModel::Kind::ideal
                                         ? 0.0
                                         : sample_von_mises(phase_.kappa, engine);
                const std::complex<double> rot = std::polar(1.0, theta);

                for (std::size_t i = 0; i < n; ++i)
                {
                    double re = 0.0, im = 0.0;
                    for (std::size_t j = 0; j <= i; ++j)
                    {
                        re += chol_(i, j) * z_re_[j];
                        im += chol_(i, j) * z_im_[j];
                    }
                    const std::complex<double> hu = los_u + nlos_ * inv_sqrt2 * std::complex<double>(re, im);
                    h[i] += amp_b * std::abs(hu) * rot;
                }
            }
            const double s = beta_ / static_cast<double>(k_elements_);
            for (auto &x : h)
                x *= s;
        }

        /// Port gains |H^n|^2 for one realization.
        void draw_gains(Engine &engine, std::span<double> gains)
        {
            h_.resize(ports());
            draw(engine, h_);
            for (std::size_t i = 0; i < h_.size(); ++i)
                gains[i] = std::norm(h_[i]);
        }

        /// Gain of the selected (strongest) port for one realization.
        double draw_best_gain(Engine &engine)
        {
            g_.resize(ports());
            draw_gains(engine, g_);
            return *std::max_element(g_.begin(), g_.end());
        }

    private:
        int k_elements_;
        double beta_;
        PhaseErrorModel phase_;
        Matrix chol_;
        double los_ = 0.0, nlos_ = 1.0;
        std::normal_distribution<double> normal_;
        std::vector<double> z_re_, z_im_, g_;
        std::vector<std::complex<double>> h_;
    };

    inline std::vector<std::complex<double>> draw_channel_realization(const ScenarioConfig &cfg, User user,
                                                                      std::uint64_t seed)
    {
        ChannelSampler sampler(cfg, user);
        Engine engine(seed);
        std::vector<std::complex<double>> h(sampler.ports());
        sampler.draw(engine, h);
        return h;
    }

    namespace detail
    {
        // Runs fn(chunk_index, engine, begin, end) over fixed-size chunks with per-chunk streams
        template <class Fn>
        void for_each_chunk(const McSettings &mc, Fn &&fn)
        {
            mc.validate();
            const std::uint64_t chunks = (mc.samples + mc.chunk_size - 1) / mc.chunk_size;
            parallel_for(static_cast<std::size_t>(chunks), mc.threads,
                         [&](std::size_t c)
                         {
                             Engine engine(derive_seed(mc.seed, c));
                             const std::uint64_t begin = c * mc.chunk_size;
                             const std::uint64_t end = std::min(mc.samples, begin + mc.chunk_size);
                             fn(c, engine, begin, end);
                         });
        }

        struct MomentSums
        {
            double sum = 0.0, sum_sq = 0.0;
            void add(double x) { sum += x, sum_sq += x * x; }
            void merge(const MomentSums &o) { sum += o.sum, sum_sq += o.sum_sq; }
        };

        struct PointSums
        {
            std::uint64_t outages = 0;
            MomentSums c, p, s;
        };

        inline McEstimate mean_estimate(std::string metric, const MomentSums &m, std::uint64_t n, std::uint64_t seed)
        {
            const double nd = static_cast<double>(n);
            const double mean = m.sum / nd;
            const double var = n > 1 ? std::max(0.0, (m.sum_sq - nd * mean * mean) / (nd - 1.0)) : 0.0;
            return {std::move(metric), mean, 1.96 * std::sqrt(var / nd), n, seed, true};
        }
    }

    /// Best-port gains of `mc.samples` independent realizations, in sample order.
    inline std::vector<double> sample_best_gains(const ScenarioConfig &cfg, User user, const McSettings &mc)
    {
        std::vector<double> out(mc.samples);
        detail::for_each_chunk(mc,
                               [&](std::size_t, Engine &engine, std::uint64_t begin, std::uint64_t end)
                               {
                                   ChannelSampler sampler(cfg, user);
                                   for (auto i = begin; i < end; ++i)
                                       out[i] = sampler.draw_best_gain(engine);
                               });
        return out;
    }

    /// All port gains of `mc.samples` realizations, row-major (sample, port).
    inline std::vector<double> sample_port_gains(const ScenarioConfig &cfg, User user, const McSettings &mc)
    {
        const std::size_t n = cfg.grid(user).ports();
        std::vector<double> out(mc.samples * n);
        detail::for_each_chunk(mc,
                               [&](std::size_t, Engine &engine, std::uint64_t begin, std::uint64_t end)
                               {
                                   ChannelSampler sampler(cfg, user);
                                   for (auto i = begin; i < end; ++i)
                                       sampler.draw_gains(engine, std::span<double>(out.data() + i * n, n));
                               });
        return out;
    }

    /// Monte Carlo outage and capacity at one SNR point.
    struct McPoint
    {
        double snr_db = 0.0;
        McEstimate op;
        McEstimate ac_common, ac_private, ac_sum;
    };

    /// Estimates OP and AC of one user at every SNR in `snr_db`. All SNR points reuse the
    /// same channel draws. The result is independent of the thread count.
    inline std::vector<McPoint> simulate_user(const ScenarioConfig &cfg, User user, std::span<const double> snr_db,
                                              const McSettings &mc)
    {
        mc.validate();
        if (mc.samples < 1000)
            throw DomainError("mc: at least 1000 samples are needed for outage and capacity estimates");
        const UserModel um = [&]
        {
            UserModel m;
            m.user = user;
            m.path_loss = path_loss(cfg, user);
            m.power = rsma_power_split(cfg);
            m.k_elements = cfg.k_elements;
            return m;
        }();
        const double th_c = db_to_linear(cfg.thresholds(user).gamma_th_c_db);
        const double th_p = db_to_linear(cfg.thresholds(user).gamma_th_p_db);
        const std::size_t points = snr_db.size();
        const std::uint64_t chunks = (mc.samples + mc.chunk_size - 1) / mc.chunk_size;

        std::vector<std::vector<detail::PointSums>> partial(chunks, std::vector<detail::PointSums>(points));
        detail::for_each_chunk(mc,
                               [&](std::size_t c, Engine &engine, std::uint64_t begin, std::uint64_t end)
                               {
                                   ChannelSampler sampler(cfg, user);
                                   auto &acc = partial[c];
                                   for (auto i = begin; i < end; ++i)
                                   {
                                       const double g = sampler.draw_best_gain(engine);
                                       for (std::size_t k = 0; k < points; ++k)
                                       {
                                           const double gc = sinr_common(g, um, snr_db[k]);
                                           const double gp = sinr_private(g, um, snr_db[k]);
                                           if (!(gc > th_c && gp > th_p))
                                               ++acc[k].outages;
                                           const double cc = std::log2(1.0 + gc);
                                           const double cp = std::log2(1.0 + gp);
                                           acc[k].c.add(cc);
                                           acc[k].p.add(cp);
                                           acc[k].s.add(cc + cp);
                                       }
                                   }
                               });

        std::vector<McPoint> out(points);
        const double nd = static_cast<double>(mc.samples);
        for (std::size_t k = 0; k < points; ++k)
        {
            detail::PointSums total;
            for (const auto &chunk : partial)
            {
                total.outages += chunk[k].outages;
                total.c.merge(chunk[k].c);
                total.p.merge(chunk[k].p);
                total.s.merge(chunk[k].s);
            }
            McPoint &pt = out[k];
            pt.snr_db = snr_db[k];
            const double p = static_cast<double>(total.outages) / nd;
            pt.op = {"op", p, 1.96 * std::sqrt(p * (1.0 - p) / nd), mc.samples, mc.seed, p >= mc_reliable_floor};
            pt.ac_common = detail::mean_estimate("ac_c", total.c, mc.samples, mc.seed);
            pt.ac_private = detail::mean_estimate("ac_p", total.p, mc.samples, mc.seed);
            pt.ac_sum = detail::mean_estimate("ac_sum", total.s, mc.samples, mc.seed);
        }
        return out;
    }

    inline McEstimate estimate_op(const ScenarioConfig &cfg, User user, double snr_db, const McSettings &mc)
    {
        const double snr[] = {snr_db};
        return simulate_user(cfg, user, snr, mc).front().op;
    }

    struct McCapacity
    {
        McEstimate common, priv, sum;
    };

    inline McCapacity estimate_ac(const ScenarioConfig &cfg, User user, double snr_db, const McSettings &mc)
    {
        const double snr[] = {snr_db};
        const auto pt = simulate_user(cfg, user, snr, mc).front();
        return {pt.ac_common, pt.ac_private, pt.ac_sum};
    }
}

#endif
