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


#ifndef STARFAS_COPULA_HPP
#define STARFAS_COPULA_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <random>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "qmc.hpp"
#include "rng.hpp"
#include "specfun.hpp"

namespace starfas
{
    /// Law of the best-port gain max_n g^n: identical Gamma marginals tied by a
    /// Student-t copula with the port correlation matrix.
    class BestPortGainLaw
    {
    public:
        BestPortGainLaw(GammaMarginal marginal, CorrelationModel correlation)
            : marginal_(marginal), correlation_(std::move(correlation))
        {
            if (!(marginal_.mean_gain > 0.0) || !(marginal_.shape > 0.0))
                throw ModelDomainError("best-port law: marginal parameters must be positive");
            if (!(correlation_.nu > 0.0))
                throw DomainError("best-port law: copula degrees of freedom must be positive");
            integrator_ = std::make_shared<const MvtIntegrator>(correlation_.matrix, correlation_.nu);
        }

        const GammaMarginal &marginal() const noexcept { return marginal_; }
        const CorrelationModel &correlation() const noexcept { return correlation_; }
        std::size_t port_count() const noexcept { return correlation_.size(); }
        const MvtIntegrator &integrator() const noexcept { return *integrator_; }

    private:
        GammaMarginal marginal_;
        CorrelationModel correlation_;
        std::shared_ptr<const MvtIntegrator> integrator_;
    };

    /// Copula on the diagonal, C(u, ..., u).
    inline MvtResult copula_diagonal(const BestPortGainLaw &law, double u, const QmcSettings &settings)
    {
        if (!(u >= 0.0 && u <= 1.0))
            throw DomainError("copula_diagonal: u must lie in [0, 1]");
        if (law.port_count() == 1 || u == 0.0 || u == 1.0)
            return {u, 0.0, true};
        const double t = specfun::student_t_quantile(u, law.correlation().nu);
        std::vector<double> upper(law.port_count(), t);
        return law.integrator().cdf(upper, settings);
    }

    /// CDF of the best-port gain. Exactly the Gamma CDF for a single port.
    inline MvtResult max_gain_cdf(const BestPortGainLaw &law, double g, const QmcSettings &settings)
    {
        if (!(g >= 0.0))
            throw DomainError("max_gain_cdf: gain must be nonnegative");
        return copula_diagonal(law, law.marginal().cdf(g), settings);
    }

    // Log density of the standard multivariate t with correlation R (given its factor)
    inline double mvt_log_density(std::span<const double> x, const CholeskyFactor &chol, double nu)
    {
        const double d = static_cast<double>(x.size());
        const double q = chol.quad_form_inverse(x);
        return std::lgamma(0.5 * (nu + d)) - std::lgamma(0.5 * nu) - 0.5 * d * std::log(nu * std::numbers::pi) -
               0.5 * chol.log_det() - 0.5 * (nu + d) * std::log1p(q / nu);
    }

    /// Student-t copula density c(u, ..., u) at the common quantile t = t_nu^-1(u).
    inline double t_copula_density_diagonal(const CholeskyFactor &chol, double nu, double u)
    {
        const std::size_t n = chol.size();
        if (n == 1)
            return 1.0;
        const double t = specfun::student_t_quantile(u, nu);
        std::vector<double> x(n, t);
        const double log_c = mvt_log_density(x, chol, nu) - static_cast<double>(n) * specfun::student_t_log_pdf(t, nu);
        return std::exp(log_c);
    }

    /// Joint density of the N port gains on the diagonal: f(g)^N c(F(g), ..., F(g)).
    /// This is not the density of the maximum; see max_gain_density_numeric.
    inline double diagonal_joint_density(const BestPortGainLaw &law, double g)
    {
        if (!(g > 0.0))
            throw DomainError("diagonal_joint_density: gain must be positive");
        const auto &mg = law.marginal();
        const double f = mg.pdf(g);
        const double u = mg.cdf(g);
        const double fn = std::pow(f, static_cast<double>(law.port_count()));
        if (law.port_count() == 1)
            return fn;
        if (u <= 0.0 || u >= 1.0 || fn == 0.0)
            return 0.0;
        const auto chol = cholesky_psd(law.correlation().matrix);
        return fn * t_copula_density_diagonal(chol, law.correlation().nu, u);
    }

    struct DensityEstimate
    {
        double value = 0.0;
        bool noisy = false; // difference quotient dominated by integration error
    };

    /// Density of the best-port gain by a central difference of the CDF.
    inline DensityEstimate max_gain_density_numeric(const BestPortGainLaw &law, double g, double step,
                                                    const QmcSettings &settings)
    {
        if (!(step > 0.0) || !(g > step))
            throw DomainError("max_gain_density_numeric: need g > step > 0");
        // Common random numbers: both sides share the lattice shifts
        const auto hi = max_gain_cdf(law, g + step, settings);
        const auto lo = max_gain_cdf(law, g - step, settings);
        DensityEstimate out;
        out.value = std::max(0.0, (hi.value - lo.value) / (2.0 * step));
        const double noise = std::hypot(hi.err_estimate, lo.err_estimate) / (2.0 * step);
        const double tol_noise = settings.target_abs_tol / (2.0 * step);
        out.noisy = law.port_count() > 1 && (noise > 0.1 * std::max(out.value, 1e-300) || tol_noise > out.value);
        return out;
    }

    /// Draws i.i.d. port-gain vectors with Gamma marginals and Student-t copula.
    inline std::vector<std::vector<double>> sample_copula_gains(const BestPortGainLaw &law, std::size_t count,
                                                                std::uint64_t seed)
    {
        if (count < 1)
            throw DomainError("sample_copula_gains: count must be positive");
        const auto chol = cholesky_psd(law.correlation().matrix);
        const std::size_t n = law.port_count();
        const double nu = law.correlation().nu;
        Engine engine(seed);
        std::normal_distribution<double> normal;
        std::chi_squared_distribution<double> chi2(nu);

        std::vector<std::vector<double>> out(count, std::vector<double>(n));
        std::vector<double> z(n);
        for (auto &gains : out)
        {
            for (auto &v : z)
                v = normal(engine);
            const double s = std::sqrt(chi2(engine) / nu);
            for (std::size_t i = 0; i < n; ++i)
            {
                double x = 0.0;
                for (std::size_t j = 0; j <= i; ++j)
                    x += chol.lower(i, j) * z[j];
                const double u = specfun::student_t_cdf(x / s, nu);
                gains[i] = law.marginal().quantile(std::clamp(u, 1e-300, 1.0 - 0x1.0p-53));
            }
        }
        return out;
    }
}

#endif
