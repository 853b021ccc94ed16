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

#include <starfas/qmc.hpp>

#include "oracles.hpp"

using namespace starfas;

namespace
{
    Matrix equicorrelated(std::size_t d, double rho)
    {
        Matrix m(d, rho);
        for (std::size_t i = 0; i < d; ++i)
            m(i, i) = 1.0;
        return m;
    }
}

TEST_CASE("Settings are validated", "[qmc]")
{
    QmcSettings s;
    CHECK_NOTHROW(s.validate());
    s.sample_budget = 32;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = {};
    s.randomizations = 4;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = {};
    s.target_abs_tol = 0.5;
    CHECK_THROWS_AS(s.validate(), DomainError);
}

TEST_CASE("One-dimensional case reduces to the t CDF", "[qmc]")
{
    const Matrix one = Matrix::identity(1);
    const double zero[] = {0.0};
    CHECK(mvt_cdf(zero, one, 40.0, {}).value == Catch::Approx(0.5).margin(1e-12));
    for (double nu : {1.0, 5.0, 40.0})
        for (double b : {-3.0, -0.5, 0.8, 2.5})
        {
            const double upper[] = {b};
            const auto r = mvt_cdf(upper, one, nu, {});
            CHECK(std::abs(r.value - oracle::t_cdf(b, nu)) < 1e-6);
        }
}

TEST_CASE("Identity correlation is not independence for t components", "[qmc]")
{
    // T_i = Z_i / s share the chi scale, so the joint CDF exceeds the product 0.7^2
    const double t = specfun::student_t_quantile(0.7, 40.0);
    const std::vector<double> upper{t, t};
    const double ref = oracle::mvt_equicorrelated(upper, 0.0, 40.0);
    const auto r = mvt_cdf(upper, Matrix::identity(2), 40.0, {});
    CHECK(std::abs(r.value - ref) < 3.0 * r.err_estimate + 1e-6);
    CHECK(r.value == Catch::Approx(0.4904168).margin(2e-5));
    CHECK(r.value > 0.49);
}

TEST_CASE("Equicorrelated orthant probability", "[qmc]")
{
    const std::vector<double> upper(4, 0.0);
    const Matrix corr = equicorrelated(4, 0.3);
    const auto r = mvt_cdf(upper, corr, 40.0, {});
    REQUIRE(r.tolerance_met);

    const double quad = oracle::mvt_equicorrelated(upper, 0.3, 40.0);
    CHECK(std::abs(r.value - quad) < 3.0 * r.err_estimate + 1e-6);

    std::vector<std::vector<double>> c(4, std::vector<double>(4, 0.3));
    for (int i = 0; i < 4; ++i)
        c[i][i] = 1.0;
    const auto mc = oracle::mvt_dense_mc(upper, c, 40.0, 2000000, 99);
    CHECK(std::abs(r.value - mc.value) < 3.0 * std::hypot(r.err_estimate, mc.std_error));
}

TEST_CASE("Fully correlated components collapse to one dimension", "[qmc]")
{
    const double b = 0.4;
    const std::vector<double> upper(3, b);
    const auto r = mvt_cdf(upper, Matrix(3, 1.0), 5.0, {});
    CHECK(std::abs(r.value - oracle::t_cdf(b, 5.0)) < 1e-6);
}

TEST_CASE("Monotone in each limit", "[qmc]")
{
    const Matrix corr = equicorrelated(3, 0.5);
    std::vector<double> upper{0.2, -0.4, 1.0};
    const auto base = mvt_cdf(upper, corr, 5.0, {});
    for (std::size_t i = 0; i < 3; ++i)
    {
        auto raised = upper;
        raised[i] += 0.3;
        const auto r = mvt_cdf(raised, corr, 5.0, {});
        CHECK(r.value >= base.value - 3.0 * std::hypot(r.err_estimate, base.err_estimate));
    }
}

TEST_CASE("Infinite limits", "[qmc]")
{
    const Matrix corr = equicorrelated(3, 0.2);
    const double inf = std::numeric_limits<double>::infinity();
    const std::vector<double> all_inf{inf, inf, inf};
    CHECK(mvt_cdf(all_inf, corr, 40.0, {}).value == 1.0);
    const std::vector<double> one_neg{0.0, -inf, 1.0};
    CHECK(mvt_cdf(one_neg, corr, 40.0, {}).value == 0.0);

    // an infinite coordinate drops out
    const std::vector<double> partial{0.3, inf, inf};
    CHECK(std::abs(mvt_cdf(partial, corr, 40.0, {}).value - oracle::t_cdf(0.3, 40.0)) < 1e-6);
}

TEST_CASE("Deterministic for a fixed seed", "[qmc]")
{
    const Matrix corr = equicorrelated(4, -0.2);
    const std::vector<double> upper{0.1, 0.5, -0.2, 1.3};
    QmcSettings s;
    s.seed = 1234;
    const auto a = mvt_cdf(upper, corr, 40.0, s);
    const auto b = mvt_cdf(upper, corr, 40.0, s);
    CHECK(a.value == b.value);
    CHECK(a.err_estimate == b.err_estimate);
}

TEST_CASE("Matrix checks", "[qmc]")
{
    const std::vector<double> upper{0.0, 0.0, 0.0};
    Matrix bad = equicorrelated(3, -0.9); // not PSD
    CHECK_THROWS_AS(mvt_cdf(upper, bad, 40.0, {}), MatrixError);

    Matrix asym = equicorrelated(3, 0.1);
    asym(0, 1) = 0.3;
    CHECK_THROWS_AS(mvt_cdf(upper, asym, 40.0, {}), MatrixError);

    Matrix diag = Matrix::identity(3);
    diag(1, 1) = 2.0;
    CHECK_THROWS_AS(mvt_cdf(upper, diag, 40.0, {}), MatrixError);

    // singular but PSD: jitter keeps it usable
    MvtIntegrator ones(Matrix(3, 1.0), 40.0);
    CHECK(ones.jittered());

    CHECK_THROWS_AS(mvt_cdf(std::vector<double>{0.0, 0.0}, equicorrelated(3, 0.1), 40.0, {}), DomainError);
}

TEST_CASE("Tolerance flag reflects the achieved error", "[qmc]")
{
    const Matrix corr = equicorrelated(8, 0.4);
    const std::vector<double> upper(8, 0.5);
    QmcSettings s;
    s.sample_budget = 64;
    s.randomizations = 8;
    s.target_abs_tol = 1e-9;
    const auto r = mvt_cdf(upper, corr, 5.0, s);
    CHECK_FALSE(r.tolerance_met);
    CHECK(r.err_estimate > 1e-9);
}
