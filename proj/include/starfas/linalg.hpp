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


#ifndef STARFAS_LINALG_HPP
#define STARFAS_LINALG_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace starfas
{
    // Dense square matrix, row-major. Sized for port correlation matrices (tens of rows).
    class Matrix
    {
    public:
        Matrix() = default;
        explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

        static Matrix identity(std::size_t n)
        {
            Matrix m(n);
            for (std::size_t i = 0; i < n; ++i)
                m(i, i) = 1.0;
            return m;
        }

        std::size_t size() const noexcept { return n_; }
        double &operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
        double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
        std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

        bool is_symmetric(double tol = 0.0) const
        {
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t j = i + 1; j < n_; ++j)
                    if (std::abs((*this)(i, j) - (*this)(j, i)) > tol)
                        return false;
            return true;
        }

    private:
        std::size_t n_ = 0;
        std::vector<double> data_;
    };

    // Lower-triangular factor L with L L^T = A (+ jitter I when A is singular)
    struct CholeskyFactor
    {
        Matrix lower;
        bool jittered = false;

        std::size_t size() const noexcept { return lower.size(); }

        double log_det() const
        {
            double s = 0.0;
            for (std::size_t i = 0; i < lower.size(); ++i)
                s += 2.0 * std::log(lower(i, i));
            return s;
        }

        // x^T A^{-1} x via forward substitution
        double quad_form_inverse(std::span<const double> x) const
        {
            const std::size_t n = lower.size();
            std::vector<double> y(n);
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i)
            {
                double v = x[i];
                for (std::size_t j = 0; j < i; ++j)
                    v -= lower(i, j) * y[j];
                y[i] = v / lower(i, i);
                s += y[i] * y[i];
            }
            return s;
        }
    };

    namespace detail
    {
        // Returns false when a pivot is not strictly positive
        inline bool try_cholesky(const Matrix &a, double jitter, Matrix &l, double &worst_pivot)
        {
            const std::size_t n = a.size();
            l = Matrix(n);
            worst_pivot = 0.0;
            for (std::size_t j = 0; j < n; ++j)
            {
                double d = a(j, j) + jitter;
                for (std::size_t k = 0; k < j; ++k)
                    d -= l(j, k) * l(j, k);
                if (!(d > 0.0))
                {
                    worst_pivot = d;
                    return false;
                }
                const double ljj = std::sqrt(d);
                l(j, j) = ljj;
                for (std::size_t i = j + 1; i < n; ++i)
                {
                    double v = a(i, j);
                    for (std::size_t k = 0; k < j; ++k)
                        v -= l(i, k) * l(j, k);
                    l(i, j) = v / ljj;
                }
            }
            return true;
        }
    }

    inline constexpr double correlation_jitter = 1e-10;

    /// Cholesky factor of a symmetric positive semidefinite matrix.
    ///
    /// Positive definite input is factored as is. Singular PSD input (e.g. co-located
    /// ports, rho = 1) is factored after adding correlation_jitter to the diagonal.
    /// Anything else raises MatrixError.
    inline CholeskyFactor cholesky_psd(const Matrix &a)
    {
        if (a.size() == 0)
            throw MatrixError("cholesky: empty matrix");
        if (!a.is_symmetric(1e-12))
            throw MatrixError("cholesky: matrix is not symmetric");

        CholeskyFactor f;
        double pivot = 0.0;
        constexpr double min_pivot = 1e-13;
        if (detail::try_cholesky(a, 0.0, f.lower, pivot))
        {
            bool tiny = false;
            for (std::size_t i = 0; i < a.size(); ++i)
                tiny = tiny || f.lower(i, i) * f.lower(i, i) < min_pivot;
            if (!tiny)
                return f;
        }
        else if (pivot < -1e-8)
            throw MatrixError("cholesky: matrix is not positive semidefinite (pivot " + std::to_string(pivot) + ")");

        if (!detail::try_cholesky(a, correlation_jitter, f.lower, pivot))
            throw MatrixError("cholesky: matrix is not positive semidefinite after jitter (pivot " +
                              std::to_string(pivot) + ")");
        f.jittered = true;
        return f;
    }
}

#endif
