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


#ifndef STARFAS_QMC_HPP
#define STARFAS_QMC_HPP

// Randomized quasi-Monte Carlo evaluation of the multivariate Student-t CDF.
//
// The t vector is written as Z / sqrt(S / nu) with Z ~ N(0, R) and S ~ chi^2_nu.
// Conditioning on S turns the CDF into a Gaussian orthant probability, which is
// integrated with Genz's separation of variables over the unit cube. The cube is
// sampled by a Korobov rank-1 lattice with random shifts and the baker's
// (tent) periodization; the spread of the per-shift means gives the error estimate.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "rng.hpp"
#include "specfun.hpp"

namespace starfas
{
    struct QmcSettings
    {
        std::uint64_t sample_budget = 8192; // lattice points per randomization
        std::uint32_t randomizations = 12;
        double target_abs_tol = 1e-4;
        std::uint64_t seed = 0x51f15eedULL;

        void validate() const
        {
            if (sample_budget < 64)
                throw DomainError("QmcSettings: sample_budget must be at least 64");
            if (sample_budget >= (std::uint64_t{1} << 31))
                throw DomainError("QmcSettings: sample_budget must be below 2^31");
            if (randomizations < 8)
                throw DomainError("QmcSettings: randomizations must be at least 8");
            if (!(target_abs_tol > 0.0 && target_abs_tol < 0.1))
                throw DomainError("QmcSettings: target_abs_tol must lie in (0, 0.1)");
        }
    };

    struct MvtResult
    {
        double value = 0.0;
        double err_estimate = 0.0; // standard error over randomizations
        bool tolerance_met = true; // false when err_estimate > target_abs_tol
    };

    namespace detail
    {
        // Weighted P_2 figure of merit of the Korobov vector (1, a, a^2, ...) mod n
        inline double korobov_p2(std::uint64_t n, std::uint64_t a, std::size_t dims, const std::vector<double> &omega)
        {
            std::vector<std::uint64_t> z(dims);
            std::uint64_t g = 1;
            for (std::size_t j = 0; j < dims; ++j)
            {
                z[j] = g;
                g = (g * a) % n;
            }
            double total = 0.0;
            for (std::uint64_t k = 0; k < n; ++k)
            {
                double prod = 1.0;
                for (std::size_t j = 0; j < dims; ++j)
                {
                    const double weight = 1.0 / static_cast<double>((j + 1) * (j + 1));
                    prod *= 1.0 + weight * omega[(k * z[j]) % n];
                }
                total += prod;
            }
            return total / static_cast<double>(n) - 1.0;
        }
    }

    /// Generating vector (1, a, a^2, ...) mod n of a Korobov lattice. The multiplier
    /// minimizes a weighted P_2 criterion over up to 256 candidates; results are cached.
    inline std::vector<std::uint64_t> korobov_generator(std::uint64_t n, std::size_t dims)
    {
        static std::mutex cache_mutex;
        static std::map<std::pair<std::uint64_t, std::size_t>, std::vector<std::uint64_t>> cache;
        {
            std::lock_guard lock(cache_mutex);
            if (auto it = cache.find({n, dims}); it != cache.end())
                return it->second;
        }

        std::uint64_t best_a = 1;
        if (dims > 1 && n > 3)
        {
            std::vector<double> omega(n);
            for (std::uint64_t k = 0; k < n; ++k)
            {
                const double x = static_cast<double>(k) / static_cast<double>(n);
                omega[k] = 2.0 * std::numbers::pi * std::numbers::pi * (x * x - x + 1.0 / 6.0);
            }
            const std::uint64_t half = n / 2;
            const std::uint64_t stride = std::max<std::uint64_t>(1, half / 256);
            double best = std::numeric_limits<double>::infinity();
            for (std::uint64_t base = 2; base <= half; base += stride)
            {
                std::uint64_t a = base;
                while (std::gcd(a, n) != 1)
                    ++a;
                const double crit = detail::korobov_p2(n, a, dims, omega);
                if (crit < best)
                {
                    best = crit;
                    best_a = a;
                }
            }
        }

        std::vector<std::uint64_t> z(dims);
        std::uint64_t g = 1;
        for (std::size_t j = 0; j < dims; ++j)
        {
            z[j] = g;
            g = (g * best_a) % n;
        }
        std::lock_guard lock(cache_mutex);
        cache.emplace(std::make_pair(n, dims), z);
        return z;
    }

    /// Multivariate t CDF P(T <= upper) for a fixed correlation matrix and degrees of freedom.
    /// The factorization is done once; cdf() can be called many times and concurrently.
    class MvtIntegrator
    {
    public:
        MvtIntegrator(const Matrix &corr, double nu) : nu_(nu)
        {
            if (!(nu > 0.0))
                throw DomainError("mvt_cdf: degrees of freedom must be positive");
            const std::size_t d = corr.size();
            if (d == 0)
                throw MatrixError("mvt_cdf: empty correlation matrix");
            for (std::size_t i = 0; i < d; ++i)
            {
                if (std::abs(corr(i, i) - 1.0) > 1e-12)
                    throw MatrixError("mvt_cdf: correlation matrix must have a unit diagonal");
                for (std::size_t j = 0; j < d; ++j)
                    if (!(std::abs(corr(i, j)) <= 1.0 + 1e-12))
                        throw MatrixError("mvt_cdf: correlation entries must lie in [-1, 1]");
            }
            chol_ = cholesky_psd(corr);
            comonotone_ = true;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    comonotone_ = comonotone_ && corr(i, j) == 1.0;
        }

        std::size_t dimension() const noexcept { return chol_.size(); }
        double nu() const noexcept { return nu_; }
        bool jittered() const noexcept { return chol_.jittered; }

        MvtResult cdf(std::span<const double> upper, const QmcSettings &settings) const
        {
            settings.validate();
            const std::size_t d = dimension();
            if (upper.size() != d)
                throw DomainError("mvt_cdf: upper limit has " + std::to_string(upper.size()) +
                                  " entries, correlation matrix has " + std::to_string(d));

            bool all_inf = true;
            for (double b : upper)
            {
                if (std::isnan(b))
                    throw DomainError("mvt_cdf: NaN upper limit");
                if (b == -std::numeric_limits<double>::infinity())
                    return {0.0, 0.0, true};
                all_inf = all_inf && std::isinf(b);
            }
            if (all_inf)
                return {1.0, 0.0, true};
            // one dimension, or identical components: the univariate t CDF at the tightest limit
            if (comonotone_)
                return {specfun::student_t_cdf(*std::min_element(upper.begin(), upper.end()), nu_), 0.0, true};

            const std::uint64_t n = settings.sample_budget;
            const std::size_t dims = d; // one radial coordinate + (d - 1) conditional normals
            const auto z = korobov_generator(n, dims);

            Engine engine(settings.seed);
            std::vector<double> shift(dims), w(dims), y(d);
            std::vector<double> means(settings.randomizations);
            for (std::uint32_t r = 0; r < settings.randomizations; ++r)
            {
                for (auto &s : shift)
                    s = uniform01(engine);
                double sum = 0.0;
                for (std::uint64_t k = 0; k < n; ++k)
                {
                    for (std::size_t j = 0; j < dims; ++j)
                    {
                        double v = static_cast<double>((k * z[j]) % n) / static_cast<double>(n) + shift[j];
                        v -= std::floor(v);
                        w[j] = 1.0 - std::abs(2.0 * v - 1.0);
                    }
                    sum += integrand(upper, w, y);
                }
                means[r] = sum / static_cast<double>(n);
            }

            const double R = static_cast<double>(settings.randomizations);
            const double mean = std::accumulate(means.begin(), means.end(), 0.0) / R;
            double ss = 0.0;
            for (double m : means)
                ss += (m - mean) * (m - mean);
            const double se = std::sqrt(ss / (R * (R - 1.0)));

            MvtResult out;
            out.value = std::clamp(mean, 0.0, 1.0);
            out.err_estimate = se;
            out.tolerance_met = se <= settings.target_abs_tol;
            return out;
        }

    private:
        double integrand(std::span<const double> upper, std::span<const double> w, std::span<double> y) const
        {
            constexpr double u_min = 1e-300;
            constexpr double u_max = 1.0 - 0x1.0p-53;
            const std::size_t d = dimension();
            const auto &L = chol_.lower;

            double scale = 1.0;
            if (nu_ < specfun::detail::nu_normal_limit)
            {
                const double u = std::min(w[0], u_max);
                scale = std::sqrt(specfun::chi_square_quantile(u, nu_) / nu_);
            }

            double prod = 1.0;
            for (std::size_t i = 0; i < d; ++i)
            {
                double e;
                if (std::isinf(upper[i]))
                    e = 1.0;
                else
                {
                    double acc = upper[i] * scale;
                    for (std::size_t j = 0; j < i; ++j)
                        acc -= L(i, j) * y[j];
                    e = specfun::std_normal_cdf(acc / L(i, i));
                }
                prod *= e;
                if (prod == 0.0)
                    return 0.0;
                if (i + 1 < d)
                {
                    const double u = std::clamp(w[i + 1] * e, u_min, u_max);
                    y[i] = specfun::std_normal_quantile(u);
                }
            }
            return prod;
        }

        CholeskyFactor chol_;
        double nu_;
        bool comonotone_ = false;
    };

    /// P(T <= upper) for T multivariate t with correlation `corr` and `nu` degrees of freedom.
    inline MvtResult mvt_cdf(std::span<const double> upper, const Matrix &corr, double nu, const QmcSettings &settings)
    {
        return MvtIntegrator(corr, nu).cdf(upper, settings);
    }
}

#endif
