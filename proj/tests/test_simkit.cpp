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


#include <catch_amalgamated.hpp>

#include <starfas/simkit.hpp>

#include "oracles.hpp"

using namespace starfas;
using Catch::Approx;

TEST_CASE("von Mises sampler", "[simkit]")
{
    SECTION("uniform at zero concentration")
    {
        const auto x = sample_von_mises(0.0, 100000, 1);
        double c = 0.0, s = 0.0;
        for (double v : x)
        {
            CHECK(v > -oracle::pi - 1e-12);
            CHECK(v <= oracle::pi + 1e-12);
            c += std::cos(v), s += std::sin(v);
        }
        CHECK(std::hypot(c, s) / x.size() <= 0.01);

        // chi-square test on 20 bins, 0.1% critical value of chi^2 with 19 dof
        std::vector<int> bins(20, 0);
        for (double v : x)
            ++bins[std::min(19, static_cast<int>((v + oracle::pi) / (2.0 * oracle::pi) * 20.0))];
        const double expected = x.size() / 20.0;
        double chi2 = 0.0;
        for (int b : bins)
            chi2 += (b - expected) * (b - expected) / expected;
        CHECK(chi2 < 43.82);
    }

    SECTION("circular moments")
    {
        for (double kappa : {2.0, 8.0})
        {
            const std::size_t n = 200000;
            const auto x = sample_von_mises(kappa, n, 7);
            const double i0 = oracle::bessel_i_series(0, kappa);
            const double phi1 = oracle::bessel_i_series(1, kappa) / i0;
            const double phi2 = oracle::bessel_i_series(2, kappa) / i0;
            double m1 = 0.0, m2 = 0.0;
            for (double v : x)
                m1 += std::cos(v), m2 += std::cos(2.0 * v);
            m1 /= n, m2 /= n;
            const double sd1 = std::sqrt(((1.0 + phi2) / 2.0 - phi1 * phi1) / n);
            const double phi4 = oracle::bessel_i_series(4, kappa) / i0;
            const double sd2 = std::sqrt(((1.0 + phi4) / 2.0 - phi2 * phi2) / n);
            CHECK(std::abs(m1 - phi1) < 3.0 * sd1);
            CHECK(std::abs(m2 - phi2) < 3.0 * sd2);
            if (kappa == 8.0)
                CHECK(std::abs(m1 - phi1) < 0.003);
        }
    }

    SECTION("concentration limit")
    {
        for (double v : sample_von_mises(1e6, 10000, 3))
            CHECK(std::abs(v) < 0.01);
        for (double v : sample_von_mises(1e7, 10000, 3))
            CHECK(std::abs(v) < 0.01);
    }

    CHECK_THROWS_AS(sample_von_mises(-1.0, 10, 1), DomainError);
}

TEST_CASE("Channel realizations", "[simkit]")
{
    SECTION("colocated ports see the same channel")
    {
        ScenarioConfig cfg;
        cfg.grid_r = {2, 2, 0.0, 0.0};
        for (std::uint64_t seed = 1; seed <= 20; ++seed)
        {
            const auto h = draw_channel_realization(cfg, User::r, seed);
            REQUIRE(h.size() == 4);
            for (std::size_t i = 1; i < h.size(); ++i)
                CHECK(std::abs(h[i] - h[0]) < 1e-4 * std::abs(h[0]));
        }
    }

    SECTION("law of large numbers with ideal phases")
    {
        ScenarioConfig cfg;
        cfg.phase_error = PhaseErrorModel::ideal();
        cfg.k_elements = 40000;
        cfg.grid_r = {1, 1, 0.0, 0.0};
        const double a = oracle::rician_mean(cfg.rice_k);
        const auto h = draw_channel_realization(cfg, User::r, 9);
        CHECK(std::abs(h[0]) == Approx(cfg.beta_r * a * a).epsilon(0.01));
    }

    SECTION("single-port mean gain matches the exact second moment")
    {
        // E|H|^2 = beta^2 (1/K + (K-1)/K a^4 phi1^2) for unit-power hops
        ScenarioConfig cfg;
        cfg.grid_r = {1, 1, 0.0, 0.0};
        McSettings mc;
        mc.samples = 100000;
        mc.seed = 31;
        const auto g = sample_best_gains(cfg, User::r, mc);
        double s = 0.0, ss = 0.0;
        for (double x : g)
            s += x, ss += x * x;
        const double n = static_cast<double>(g.size());
        const double mean = s / n, se = std::sqrt((ss / n - mean * mean) / n);
        const double a = oracle::rician_mean(cfg.rice_k);
        const double phi1 = oracle::bessel_i_series(1, 8.0) / oracle::bessel_i_series(0, 8.0);
        const double k = cfg.k_elements;
        const double exact = 0.64 * (1.0 / k + (k - 1.0) / k * std::pow(a, 4) * phi1 * phi1);
        CHECK(std::abs(mean - exact) < 4.0 * se);
    }
}

TEST_CASE("Monte Carlo outage and capacity", "[simkit]")
{
    ScenarioConfig cfg;
    McSettings mc;
    mc.samples = 20000;
    mc.seed = 5;

    SECTION("targets that are always met")
    {
        ScenarioConfig c = cfg;
        c.thresholds_r = {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
        CHECK(estimate_op(c, User::r, 40.0, mc).value == 0.0);
    }

    SECTION("no signal")
    {
        CHECK(estimate_op(cfg, User::r, -300.0, mc).value == 1.0);
    }

    SECTION("capacity ceilings")
    {
        const auto r = estimate_ac(cfg, User::r, 250.0, mc);
        CHECK(std::abs(r.sum.value - (std::log2(2.5) + 2.0)) <= r.sum.half_width_95 + 1e-9);
        const auto t = estimate_ac(cfg, User::t, 250.0, mc);
        CHECK(std::abs(t.sum.value - (std::log2(2.5) + std::log2(4.0 / 3.0))) <= t.sum.half_width_95 + 1e-9);
    }

    SECTION("vanishing private power")
    {
        ScenarioConfig c = cfg;
        c.alpha_c = 1.0 - 1e-12;
        CHECK(estimate_ac(c, User::r, 40.0, mc).priv.value < 1e-9);
    }

    SECTION("agreement with the closed form where outage is certain")
    {
        mc.samples = 100000;
        const auto op = estimate_op(cfg, User::r, 40.0, mc);
        const auto an = UserAnalysis(cfg, User::r).outage_probability(40.0, {});
        CHECK(std::abs(op.value - an.value) <= std::max(0.02, 3.0 * op.half_width_95));
    }

    SECTION("capacity within the Jensen allowance at 30 dB")
    {
        mc.samples = 100000;
        for (User u : {User::r, User::t})
        {
            const auto ac = estimate_ac(cfg, u, 30.0, mc);
            CHECK(std::abs(ac.sum.value - UserAnalysis(cfg, u).average_capacity(30.0).sum) < 0.25);
        }
    }

    SECTION("estimates carry their metadata")
    {
        const auto op = estimate_op(cfg, User::t, 50.0, mc);
        CHECK(op.samples == mc.samples);
        CHECK(op.seed == mc.seed);
        CHECK(op.half_width_95 == Approx(1.96 * std::sqrt(op.value * (1.0 - op.value) / mc.samples)));
        CHECK(op.reliable);
        const auto tiny = estimate_op(cfg, User::r, 70.0, mc);
        CHECK_FALSE(tiny.reliable);
    }

    mc.samples = 999;
    CHECK_THROWS_AS(estimate_op(cfg, User::r, 40.0, mc), DomainError);
}

TEST_CASE("Reproducibility", "[simkit]")
{
    const ScenarioConfig cfg;
    const double snr[] = {45.0, 50.0, 55.0};
    McSettings mc;
    mc.samples = 30000;
    mc.seed = 77;
    mc.threads = 1;
    const auto a = simulate_user(cfg, User::t, snr, mc);
    const auto b = simulate_user(cfg, User::t, snr, mc);
    mc.threads = 3;
    const auto c = simulate_user(cfg, User::t, snr, mc);
    for (std::size_t i = 0; i < 3; ++i)
    {
        CHECK(a[i].op.value == b[i].op.value);
        CHECK(a[i].ac_sum.value == b[i].ac_sum.value);
        CHECK(a[i].op.value == c[i].op.value);
        CHECK(a[i].ac_sum.value == c[i].ac_sum.value);
        CHECK(a[i].ac_sum.half_width_95 == c[i].ac_sum.half_width_95);
    }
    mc.seed = 78;
    const auto d = simulate_user(cfg, User::t, snr, mc);
    CHECK(d[1].ac_sum.value != a[1].ac_sum.value);
}

TEST_CASE("Port selection and port dependence", "[simkit]")
{
    ScenarioConfig cfg;
    McSettings mc;
    mc.samples = 50000;
    mc.seed = 13;

    SECTION("best port dominates a fixed port")
    {
        const auto g = sample_port_gains(cfg, User::r, mc);
        std::vector<double> best, first;
        for (std::size_t i = 0; i < mc.samples; ++i)
        {
            first.push_back(g[4 * i]);
            best.push_back(*std::max_element(g.begin() + 4 * i, g.begin() + 4 * i + 4));
        }
        std::sort(best.begin(), best.end());
        std::sort(first.begin(), first.end());
        for (std::size_t i = 0; i < best.size(); ++i)
            CHECK(best[i] >= first[i]);
    }

    SECTION("gain dependence grows as the ports close in")
    {
        double prev = -1.0;
        for (double w : {1.0, 0.4, 0.25, 0.1})
        {
            cfg.grid_r = {2, 2, w, w};
            const auto g = sample_port_gains(cfg, User::r, mc);
            std::vector<double> p0, p1;
            for (std::size_t i = 0; i < mc.samples; ++i)
                p0.push_back(g[4 * i]), p1.push_back(g[4 * i + 1]);
            const double rc = oracle::rank_correlation(p0, p1);
            CHECK(rc > prev);
            prev = rc;
        }
    }
}
