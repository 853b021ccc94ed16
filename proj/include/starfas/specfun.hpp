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

#ifndef STARFAS_SPECFUN_HPP
#define STARFAS_SPECFUN_HPP

// Real-argument special functions used by the channel model, the copula and the
// performance formulas. Everything here is a pure function of its arguments.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace starfas::specfun
{
    namespace detail
    {
        inline constexpr double eps = std::numeric_limits<double>::epsilon();
        inline constexpr double fpmin = std::numeric_limits<double>::min() / eps;
        inline constexpr int max_iter = 200000;

        inline void require(bool ok, const char *fn, const std::string &msg)
        {
            if (!ok)
                throw DomainError(std::string(fn) + ": " + msg);
        }

        // exp(-x) x^a / Gamma(a)
        inline double gamma_prefactor(double a, double x)
        {
            return std::exp(-x + a * std::log(x) - std::lgamma(a));
        }

        // P(a,x) by its power series, valid for x < a + 1
        inline double lower_gamma_series(double a, double x)
        {
            double ap = a;
            double term = 1.0 / a;
            double sum = term;
            for (int n = 0; n < max_iter; ++n)
            {
                ap += 1.0;
                term *= x / ap;
                sum += term;
                if (std::abs(term) < std::abs(sum) * eps)
                    break;
            }
            return sum * gamma_prefactor(a, x);
        }

        // Q(a,x) by the Legendre continued fraction (modified Lentz), valid for x > a + 1
        inline double upper_gamma_fraction(double a, double x)
        {
            double b = x + 1.0 - a;
            double c = 1.0 / fpmin;
            double d = 1.0 / b;
            double h = d;
            for (int i = 1; i < max_iter; ++i)
            {
                const double an = -i * (i - a);
                b += 2.0;
                d = an * d + b;
                if (std::abs(d) < fpmin)
                    d = fpmin;
                c = b + an / c;
                if (std::abs(c) < fpmin)
                    c = fpmin;
                d = 1.0 / d;
                const double del = d * c;
                h *= del;
                if (std::abs(del - 1.0) < eps)
                    break;
            }
            return gamma_prefactor(a, x) * h;
        }

        // Continued fraction for the incomplete beta function
        inline double beta_fraction(double a, double b, double x)
        {
            const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
            double c = 1.0;
            double d = 1.0 - qab * x / qap;
            if (std::abs(d) < fpmin)
                d = fpmin;
            d = 1.0 / d;
            double h = d;
            for (int m = 1; m < max_iter; ++m)
            {
                const int m2 = 2 * m;
                double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
                d = 1.0 + aa * d;
                if (std::abs(d) < fpmin)
                    d = fpmin;
                c = 1.0 + aa / c;
                if (std::abs(c) < fpmin)
                    c = fpmin;
                d = 1.0 / d;
                h *= d * c;
                aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
                d = 1.0 + aa * d;
                if (std::abs(d) < fpmin)
                    d = fpmin;
                c = 1.0 + aa / c;
                if (std::abs(c) < fpmin)
                    c = fpmin;
                d = 1.0 / d;
                const double del = d * c;
                h *= del;
                if (std::abs(del - 1.0) < eps)
                    break;
            }
            return h;
        }
    }

    // ---------------------------------------------------------------------------
    // Incomplete gamma

    /// Regularized lower incomplete gamma P(m, x) = Y(m, x) / Gamma(m).
    inline double regularized_lower_gamma(double m, double x)
    {
        detail::require(m > 0.0, "regularized_lower_gamma", "shape must be positive");
        detail::require(x >= 0.0, "regularized_lower_gamma", "argument must be nonnegative");
        if (x == 0.0)
            return 0.0;
        if (std::isinf(x))
            return 1.0;
        if (x < m + 1.0)
            return detail::lower_gamma_series(m, x);
        return 1.0 - detail::upper_gamma_fraction(m, x);
    }

    /// Regularized upper incomplete gamma Q(m, x) = 1 - P(m, x), accurate in the upper tail.
    inline double regularized_upper_gamma(double m, double x)
    {
        detail::require(m > 0.0, "regularized_upper_gamma", "shape must be positive");
        detail::require(x >= 0.0, "regularized_upper_gamma", "argument must be nonnegative");
        if (x == 0.0)
            return 1.0;
        if (std::isinf(x))
            return 0.0;
        if (x < m + 1.0)
            return 1.0 - detail::lower_gamma_series(m, x);
        return detail::upper_gamma_fraction(m, x);
    }

    /// Solves P(m, x) = p for x (Halley iteration on an initial Wilson-Hilferty guess).
    inline double inverse_regularized_lower_gamma(double m, double p)
    {
        detail::require(m > 0.0, "inverse_regularized_lower_gamma", "shape must be positive");
        detail::require(p >= 0.0 && p <= 1.0, "inverse_regularized_lower_gamma", "probability outside [0,1]");
        if (p == 0.0)
            return 0.0;
        if (p == 1.0)
            return std::numeric_limits<double>::infinity();

        const double a1 = m - 1.0;
        const double gln = std::lgamma(m);
        double lna1 = 0.0, afac = 0.0, x = 0.0;
        if (m > 1.0)
        {
            lna1 = std::log(a1);
            afac = std::exp(a1 * (lna1 - 1.0) - gln);
            const double pp = p < 0.5 ? p : 1.0 - p;
            const double t = std::sqrt(-2.0 * std::log(pp));
            double z = (2.30753 + t * 0.27061) / (1.0 + t * (0.99229 + t * 0.04481)) - t;
            if (p < 0.5)
                z = -z;
            x = std::max(1e-3, m * std::pow(1.0 - 1.0 / (9.0 * m) - z / (3.0 * std::sqrt(m)), 3));
            // Very small p: the power-series leading term is a better start
            if (p < 1e-3)
                x = std::min(x, std::exp((std::log(p) + std::lgamma(m + 1.0)) / m));
        }
        else
        {
            const double t = 1.0 - m * (0.253 + m * 0.12);
            x = p < t ? std::pow(p / t, 1.0 / m) : 1.0 - std::log(1.0 - (p - t) / (1.0 - t));
        }

        for (int j = 0; j < 100; ++j)
        {
            if (x <= 0.0)
                return 0.0;
            // Residual computed on the tail that carries the precision
            const double err = p < 0.5 ? regularized_lower_gamma(m, x) - p
                                       : (1.0 - p) - regularized_upper_gamma(m, x);
            double t = m > 1.0 ? afac * std::exp(-(x - a1) + a1 * (std::log(x) - lna1))
                               : std::exp(-x + a1 * std::log(x) - gln);
            if (t == 0.0)
                break;
            const double u = err / t;
            t = u / (1.0 - 0.5 * std::min(1.0, u * ((m - 1.0) / x - 1.0)));
            x -= t;
            if (x <= 0.0)
                x = 0.5 * (x + t);
            if (std::abs(t) < 1e-14 * x)
                break;
        }
        return x;
    }

    // ---------------------------------------------------------------------------
    // Bessel functions

    /// Exponentially scaled modified Bessel function exp(-x) I_p(x), integer order p >= 0.
    inline double bessel_i_scaled(int p, double x)
    {
        detail::require(p >= 0, "bessel_i", "order must be nonnegative");
        detail::require(x >= 0.0, "bessel_i", "argument must be nonnegative");
        if (x == 0.0)
            return p == 0 ? 1.0 : 0.0;

        const double pp = static_cast<double>(p);
        if (x <= std::max(30.0, 2.0 * pp * pp))
        {
            // Ascending series sum_k (x/2)^(2k+p) / (k! (k+p)!)
            const double q = 0.25 * x * x;
            double term = 1.0, sum = 1.0;
            for (int k = 1; k < detail::max_iter; ++k)
            {
                term *= q / (k * (k + pp));
                sum += term;
                if (term < sum * detail::eps)
                    break;
            }
            return sum * std::exp(pp * std::log(0.5 * x) - std::lgamma(pp + 1.0) - x);
        }

        // Hankel asymptotic expansion, truncated at the smallest term
        const double mu = 4.0 * pp * pp;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 200; ++k)
        {
            const double odd = 2.0 * k - 1.0;
            const double next = -term * (mu - odd * odd) / (k * 8.0 * x);
            if (std::abs(next) >= std::abs(term))
                break;
            term = next;
            sum += term;
            if (std::abs(term) < std::abs(sum) * detail::eps)
                break;
        }
        return sum / std::sqrt(2.0 * std::numbers::pi * x);
    }

    /// Modified Bessel function of the first kind I_p(x).
    inline double bessel_i(int p, double x)
    {
        const double s = bessel_i_scaled(p, x);
        return s == 0.0 ? 0.0 : s * std::exp(x);
    }

    /// I_p(x) / I_0(x) without overflow; the p-th circular moment of a von Mises(x) angle.
    inline double bessel_i_ratio(int p, double x)
    {
        return bessel_i_scaled(p, x) / bessel_i_scaled(0, x);
    }

    /// sin(x)/x with the removable singularity at 0.
    inline double spherical_j0(double x)
    {
        const double ax = std::abs(x);
        if (ax < 1e-4)
        {
            const double x2 = x * x;
            return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
        }
        return std::sin(x) / x;
    }

    /// Cylindrical Bessel J_0(x).
    inline double cylindrical_j0(double x)
    {
        return std::cyl_bessel_j(0.0, std::abs(x));
    }

    /// Rician mean factor L_{1/2}(-K) = exp(-K/2) [(1+K) I_0(K/2) + K I_1(K/2)].
    ///
    /// Multiplying by sqrt(pi / (4 (K+1))) gives E|h| for unit-power Rician fading
    /// with Rice factor K. This is 1F1(-1/2; 1; -K), the argument sign chosen so
    /// that the factor is the mean amplitude rather than its Kummer-transformed twin.
    inline double kummer_1f1_half(double k_rice)
    {
        detail::require(k_rice >= 0.0, "kummer_1f1_half", "Rice factor must be nonnegative");
        if (k_rice == 0.0)
            return 1.0;
        const double h = 0.5 * k_rice;
        return (1.0 + k_rice) * bessel_i_scaled(0, h) + k_rice * bessel_i_scaled(1, h);
    }

    /// E|h| for unit-power Rician fading; sqrt(pi)/2 at K = 0, tends to 1 as K grows.
    inline double rician_mean_amplitude(double k_rice)
    {
        return std::sqrt(std::numbers::pi / (4.0 * (k_rice + 1.0))) * kummer_1f1_half(k_rice);
    }

    // ---------------------------------------------------------------------------
    // Normal distribution

    inline double std_normal_pdf(double x)
    {
        return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    }

    inline double std_normal_cdf(double x)
    {
        return 0.5 * std::erfc(-x / std::numbers::sqrt2);
    }

    /// Phi^{-1}(p): rational approximation (Acklam) refined by Halley steps.
    inline double std_normal_quantile(double p)
    {
        detail::require(p > 0.0 && p < 1.0, "std_normal_quantile", "probability outside (0,1)");
        if (p == 0.5)
            return 0.0;
        if (p > 0.5)
            return -std_normal_quantile(1.0 - p);

        static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                       1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00};
        static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                       6.680131188771972e+01, -1.328068155288572e+01};
        static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                       -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00};
        static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                       3.754408661907416e+00};

        double x;
        if (p < 0.02425)
        {
            const double q = std::sqrt(-2.0 * std::log(p));
            x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
                ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
        }
        else
        {
            const double q = p - 0.5;
            const double r = q * q;
            x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
                (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
        }

        for (int i = 0; i < 2; ++i)
        {
            const double e = std_normal_cdf(x) - p;
            const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
            x -= u / (1.0 + 0.5 * x * u);
        }
        return x;
    }

    // ---------------------------------------------------------------------------
    // Incomplete beta and Student-t

    /// I_x(a, b); pass y = 1 - x explicitly when it is known more accurately than 1 - x.
    inline double regularized_incomplete_beta(double a, double b, double x, double y)
    {
        detail::require(a > 0.0 && b > 0.0, "regularized_incomplete_beta", "parameters must be positive");
        detail::require(x >= 0.0 && x <= 1.0, "regularized_incomplete_beta", "argument outside [0,1]");
        if (x <= 0.0)
            return 0.0;
        if (y <= 0.0)
            return 1.0;
        const double lbt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log(y);
        if (x < (a + 1.0) / (a + b + 2.0))
            return std::exp(lbt) * detail::beta_fraction(a, b, x) / a;
        return 1.0 - std::exp(lbt) * detail::beta_fraction(b, a, y) / b;
    }

    inline double regularized_incomplete_beta(double a, double b, double x)
    {
        return regularized_incomplete_beta(a, b, x, 1.0 - x);
    }

    namespace detail
    {
        // Above this the t and normal laws agree to double precision for our purposes
        inline constexpr double nu_normal_limit = 1e10;

        // Lower tail F(t) for t <= 0, with full relative accuracy
        inline double student_t_lower_tail(double t, double nu)
        {
            if (nu >= nu_normal_limit)
                return std_normal_cdf(t);
            if (std::isinf(t))
                return 0.0;
            const double t2 = t * t;
            const double x = nu / (nu + t2);
            const double y = t2 / (nu + t2);
            return 0.5 * regularized_incomplete_beta(0.5 * nu, 0.5, x, y);
        }
    }

    inline double student_t_log_pdf(double t, double nu)
    {
        detail::require(nu > 0.0, "student_t_pdf", "degrees of freedom must be positive");
        if (nu >= detail::nu_normal_limit)
            return -0.5 * t * t - 0.5 * std::log(2.0 * std::numbers::pi);
        return std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) - 0.5 * std::log(nu * std::numbers::pi) -
               0.5 * (nu + 1.0) * std::log1p(t * t / nu);
    }

    inline double student_t_pdf(double t, double nu)
    {
        return std::exp(student_t_log_pdf(t, nu));
    }

    inline double student_t_cdf(double t, double nu)
    {
        detail::require(nu > 0.0, "student_t_cdf", "degrees of freedom must be positive");
        if (t == 0.0)
            return 0.5;
        if (t < 0.0)
            return detail::student_t_lower_tail(t, nu);
        return 1.0 - detail::student_t_lower_tail(-t, nu);
    }

    /// t_nu^{-1}(p). Closed forms for nu = 1, 2; otherwise the better of a Cornish-Fisher
    /// and a power-tail starting point, refined by bracketed Halley iteration.
    inline double student_t_quantile(double p, double nu)
    {
        detail::require(p > 0.0 && p < 1.0, "student_t_quantile", "probability outside (0,1)");
        detail::require(nu > 0.0, "student_t_quantile", "degrees of freedom must be positive");
        if (p == 0.5)
            return 0.0;
        if (p > 0.5)
            return -student_t_quantile(1.0 - p, nu);
        if (nu >= detail::nu_normal_limit)
            return std_normal_quantile(p);
        if (nu == 1.0)
            return std::tan(std::numbers::pi * (p - 0.5));
        if (nu == 2.0)
            return (2.0 * p - 1.0) / std::sqrt(2.0 * p * (1.0 - p));

        // From here p < 0.5 and the answer is negative
        const double z = std_normal_quantile(p);
        const double z2 = z * z;
        const double cornish_fisher = z + z * (z2 + 1.0) / (4.0 * nu) +
                                      z * ((5.0 * z2 + 16.0) * z2 + 3.0) / (96.0 * nu * nu) +
                                      z * (((3.0 * z2 + 19.0) * z2 + 17.0) * z2 - 15.0) / (384.0 * nu * nu * nu);
        const double log_beta = std::lgamma(0.5 * nu) + std::lgamma(0.5) - std::lgamma(0.5 * (nu + 1.0));
        const double power_tail = -std::sqrt(nu) * std::exp(-(std::log(nu) + log_beta + std::log(p)) / nu);

        const double log_p = std::log(p);
        auto misfit = [&](double t)
        {
            if (!(t < 0.0) || !std::isfinite(t))
                return std::numeric_limits<double>::infinity();
            const double f = detail::student_t_lower_tail(t, nu);
            return f > 0.0 ? std::abs(std::log(f) - log_p) : std::numeric_limits<double>::infinity();
        };
        double t = misfit(cornish_fisher) <= misfit(power_tail) ? cornish_fisher : power_tail;
        if (!(t < 0.0) || !std::isfinite(t))
            t = z;

        double lo = -std::numeric_limits<double>::infinity(), hi = 0.0;
        for (int it = 0; it < 200; ++it)
        {
            const double f = detail::student_t_lower_tail(t, nu) - p;
            if (f > 0.0)
                hi = t;
            else
                lo = t;
            const double u = f / student_t_pdf(t, nu);
            double next = t - u / (1.0 + 0.5 * u * (nu + 1.0) * t / (nu + t * t));
            if (!(next > lo && next < hi) || !std::isfinite(next))
                next = std::isinf(lo) ? std::min(2.0 * t, t - 1.0) : 0.5 * (lo + hi);
            if (std::abs(next - t) <= 1e-14 * std::abs(next))
                return next;
            t = next;
        }
        return t;
    }

    /// Chi-square quantile with nu degrees of freedom.
    inline double chi_square_quantile(double p, double nu)
    {
        return 2.0 * inverse_regularized_lower_gamma(0.5 * nu, p);
    }
}

#endif
