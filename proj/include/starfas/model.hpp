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


#ifndef STARFAS_MODEL_HPP
#define STARFAS_MODEL_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "specfun.hpp"

namespace starfas
{
    enum class User
    {
        r, // reflection side
        t  // transmission side
    };

    inline constexpr User other(User u) noexcept { return u == User::r ? User::t : User::r; }
    inline constexpr const char *to_string(User u) noexcept { return u == User::r ? "r" : "t"; }

    struct Vec3
    {
        double x = 0.0, y = 0.0, z = 0.0;
        bool operator==(const Vec3 &) const = default;
    };

    inline double distance(const Vec3 &a, const Vec3 &b)
    {
        return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
    }

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

    // Planar fluid-antenna port grid: n1 x n2 ports over w1 x w2 wavelengths
    struct FasGrid
    {
        int n1 = 1, n2 = 1;
        double w1 = 0.0, w2 = 0.0;

        std::size_t ports() const noexcept { return static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2); }
        double area() const noexcept { return w1 * w2; } // in wavelengths^2
        bool operator==(const FasGrid &) const = default;

        // Square grid with N ports over W wavelengths^2
        static FasGrid square(int side, double area_wl2)
        {
            const double w = side > 1 ? std::sqrt(area_wl2) : 0.0;
            return {side, side, w, w};
        }
    };

    struct PhaseErrorModel
    {
        enum class Kind
        {
            ideal,
            von_mises
        };
        Kind kind = Kind::ideal;
        double kappa = 0.0; // concentration, von Mises only

        static PhaseErrorModel ideal() { return {}; }
        static PhaseErrorModel von_mises(double kappa) { return {Kind::von_mises, kappa}; }
        bool operator==(const PhaseErrorModel &) const = default;
    };

    enum class CorrelationKernel
    {
        spherical,  // sin(x)/x
        cylindrical // J_0(x)
    };

    // Spread used by the extreme-value capacity heuristic
    enum class AcSigma
    {
        paper,  // gbar^2 / m
        std_dev // gbar / sqrt(m)
    };

    struct Thresholds
    {
        double gamma_th_c_db = 0.0;
        double gamma_th_p_db = 0.0;
        bool operator==(const Thresholds &) const = default;
    };

    /// Full system parameterization. Defaults reproduce the reference scenario:
    /// chi = 2.1, K = 30, beta_r = 0.8, alpha_c = 0.6, Rice K = 1, kappa = 8,
    /// 2x2 ports over 0.5 wavelengths^2, nu = 40, thresholds 0/0 dB (r) and 0/-7 dB (t).
    struct ScenarioConfig
    {
        std::string scenario_id = "scenario";
        Vec3 bs_position{0.0, 0.0, 0.0};
        Vec3 ris_position{40.0, 40.0, 0.0};
        Vec3 user_r_position{20.0, 20.0, 0.0};
        Vec3 user_t_position{20.0, 20.0, 0.0};
        double chi = 2.1;
        int k_elements = 30;
        double beta_r = 0.8;
        double alpha_c = 0.6;
        double private_split_r = 0.75;
        double rice_k = 1.0;
        PhaseErrorModel phase_error = PhaseErrorModel::von_mises(8.0);
        FasGrid grid_r = FasGrid::square(2, 0.5);
        FasGrid grid_t = FasGrid::square(2, 0.5);
        double copula_nu = 40.0;
        Thresholds thresholds_r{0.0, 0.0};
        Thresholds thresholds_t{0.0, -7.0};
        std::vector<double> snr_grid_db{0, 10, 20, 30, 40, 50, 60, 70, 80};
        CorrelationKernel kernel = CorrelationKernel::spherical;
        AcSigma ac_sigma = AcSigma::paper;

        // Energy splitting: beta_r^2 + beta_t^2 = 1
        double beta_t() const { return std::sqrt(std::max(0.0, 1.0 - beta_r * beta_r)); }
        double beta(User u) const { return u == User::r ? beta_r : beta_t(); }
        const FasGrid &grid(User u) const { return u == User::r ? grid_r : grid_t; }
        FasGrid &grid(User u) { return u == User::r ? grid_r : grid_t; }
        const Thresholds &thresholds(User u) const { return u == User::r ? thresholds_r : thresholds_t; }
        const Vec3 &user_position(User u) const { return u == User::r ? user_r_position : user_t_position; }
    };

    // ---------------------------------------------------------------------------

    /// Cascaded path loss L_u = (d_SRIS d_u)^(-chi), distances measured from the BS.
    inline double path_loss(const ScenarioConfig &cfg, User user)
    {
        if (!(cfg.chi > 2.0))
            throw ModelDomainError("path_loss: path-loss exponent must exceed 2");
        const Vec3 &pu = cfg.user_position(user);
        if (pu == cfg.ris_position)
            throw GeometryError(std::string("path_loss: user ") + to_string(user) + " coincides with the RIS");
        const double d_ris = distance(cfg.bs_position, cfg.ris_position);
        const double d_user = distance(cfg.bs_position, pu);
        if (d_ris == 0.0)
            throw GeometryError("path_loss: RIS coincides with the BS");
        if (d_user == 0.0)
            throw GeometryError(std::string("path_loss: user ") + to_string(user) + " coincides with the BS");
        return std::pow(d_ris * d_user, -cfg.chi);
    }

    struct CircularMoments
    {
        double phi1 = 1.0;
        double phi2 = 1.0;
    };

    /// First two circular moments E[cos(p Theta)] of the residual phase error.
    inline CircularMoments circular_moments(const PhaseErrorModel &pe)
    {
        if (pe.kind == PhaseErrorModel::Kind::ideal)
            return {1.0, 1.0};
        if (!(pe.kappa >= 0.0))
            throw ModelDomainError("circular_moments: von Mises concentration must be nonnegative");
        if (std::isinf(pe.kappa))
            return {1.0, 1.0};
        return {specfun::bessel_i_ratio(1, pe.kappa), specfun::bessel_i_ratio(2, pe.kappa)};
    }

    /// Gamma law of a single-port gain |H_u|^2 (mean gbar, shape m).
    struct GammaMarginal
    {
        double mean_gain = 0.0;
        double shape = 1.0;

        double cdf(double g) const
        {
            if (g <= 0.0)
                return 0.0;
            return specfun::regularized_lower_gamma(shape, shape * g / mean_gain);
        }

        double pdf(double g) const
        {
            if (g <= 0.0)
                return 0.0;
            const double m = shape;
            return std::exp(m * std::log(m / mean_gain) + (m - 1.0) * std::log(g) - m * g / mean_gain -
                            std::lgamma(m));
        }

        double quantile(double p) const
        {
            return mean_gain / shape * specfun::inverse_regularized_lower_gamma(shape, p);
        }
    };

    /// Nakagami/Gamma parameters from the circular moments, the mean amplitude product
    /// a_tilde = sqrt(a_b a_u), the split amplitude beta_u and the element count K.
    inline GammaMarginal gamma_marginal(const CircularMoments &mom, double a_tilde, double beta_u, int k_elements)
    {
        if (!(mom.phi1 > 0.0))
            throw ModelDomainError("gamma_marginal: first circular moment must be positive");
        if (!(a_tilde > 0.0 && a_tilde <= 1.0))
            throw ModelDomainError("gamma_marginal: mean amplitude must lie in (0, 1]");
        if (k_elements < 1)
            throw ModelDomainError("gamma_marginal: element count must be positive");
        const double a4 = std::pow(a_tilde, 4);
        const double coherent = mom.phi1 * mom.phi1 * a4;
        const double denom = 1.0 + mom.phi2 - 2.0 * coherent;
        if (!(denom > 0.0))
            throw ModelDomainError("gamma_marginal: 1 + phi2 - 2 phi1^2 a^4 must be positive");
        GammaMarginal g;
        g.mean_gain = beta_u * beta_u * coherent;
        g.shape = 0.5 * static_cast<double>(k_elements) * coherent / denom;
        return g;
    }

    /// a_tilde = sqrt(a_b a_u); both hops share the Rician statistics.
    inline double mean_amplitude_product(const ScenarioConfig &cfg)
    {
        const double a = specfun::rician_mean_amplitude(cfg.rice_k);
        return std::sqrt(a * a);
    }

    struct CorrelationModel
    {
        Matrix matrix;
        double nu = 40.0;

        std::size_t size() const noexcept { return matrix.size(); }

        // Mean of the off-diagonal entries; 0 for a single port
        double mean_off_diagonal() const
        {
            const std::size_t n = matrix.size();
            if (n < 2)
                return 0.0;
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (i != j)
                        s += matrix(i, j);
            return s / static_cast<double>(n * (n - 1));
        }
    };

    // Port index n <-> (i1, i2), dimension 1 running fastest
    inline std::size_t port_index(const FasGrid &g, int i1, int i2) { return static_cast<std::size_t>(i2 * g.n1 + i1); }

    /// Jakes-type port correlation rho = k(2 pi * separation in wavelengths).
    /// A grid dimension with a single port contributes no displacement.
    inline CorrelationModel port_correlation(const FasGrid &grid, CorrelationKernel kernel, double nu)
    {
        if (grid.n1 < 1 || grid.n2 < 1)
            throw ModelDomainError("port_correlation: grid needs at least one port per dimension");
        const std::size_t n = grid.ports();
        CorrelationModel out{Matrix(n), nu};
        const double step1 = grid.n1 > 1 ? grid.w1 / (grid.n1 - 1) : 0.0;
        const double step2 = grid.n2 > 1 ? grid.w2 / (grid.n2 - 1) : 0.0;
        for (int a2 = 0; a2 < grid.n2; ++a2)
            for (int a1 = 0; a1 < grid.n1; ++a1)
                for (int b2 = 0; b2 < grid.n2; ++b2)
                    for (int b1 = 0; b1 < grid.n1; ++b1)
                    {
                        const double d1 = (a1 - b1) * step1;
                        const double d2 = (a2 - b2) * step2;
                        const double x = 2.0 * std::numbers::pi * std::sqrt(d1 * d1 + d2 * d2);
                        const double rho = kernel == CorrelationKernel::spherical ? specfun::spherical_j0(x)
                                                                                  : specfun::cylindrical_j0(x);
                        out.matrix(port_index(grid, a1, a2), port_index(grid, b1, b2)) = rho;
                    }
        for (std::size_t i = 0; i < n; ++i)
            out.matrix(i, i) = 1.0;
        return out;
    }

    struct PowerSplit
    {
        double alpha_c = 0.0;
        double alpha_p_r = 0.0;
        double alpha_p_t = 0.0;

        double private_power(User u) const { return u == User::r ? alpha_p_r : alpha_p_t; }
        double private_total() const { return alpha_p_r + alpha_p_t; }
    };

    inline PowerSplit rsma_power_split(const ScenarioConfig &cfg)
    {
        if (!(cfg.alpha_c > 0.0 && cfg.alpha_c < 1.0))
            throw ConfigError("alpha_c", "common power fraction must lie in (0, 1)");
        if (!(cfg.private_split_r > 0.0 && cfg.private_split_r < 1.0))
            throw ConfigError("private_split_r", "private split must lie in (0, 1)");
        const double priv = 1.0 - cfg.alpha_c;
        return {cfg.alpha_c, cfg.private_split_r * priv, (1.0 - cfg.private_split_r) * priv};
    }

    /// Everything the closed-form analysis needs about one user.
    struct UserModel
    {
        User user = User::r;
        double path_loss = 0.0;
        CircularMoments moments;
        double a_tilde = 0.0;
        GammaMarginal marginal;
        CorrelationModel correlation;
        PowerSplit power;
        int k_elements = 0;

        // Receive SNR scale gamma_bar L_u K^2 at the given transmit SNR
        double gain_scale(double snr_db) const
        {
            const double k = static_cast<double>(k_elements);
            return db_to_linear(snr_db) * path_loss * k * k;
        }
    };

    inline UserModel derive_user_model(const ScenarioConfig &cfg, User user)
    {
        UserModel m;
        m.user = user;
        m.path_loss = path_loss(cfg, user);
        m.moments = circular_moments(cfg.phase_error);
        m.a_tilde = mean_amplitude_product(cfg);
        m.marginal = gamma_marginal(m.moments, m.a_tilde, cfg.beta(user), cfg.k_elements);
        m.correlation = port_correlation(cfg.grid(user), cfg.kernel, cfg.copula_nu);
        m.power = rsma_power_split(cfg);
        m.k_elements = cfg.k_elements;
        return m;
    }
}

#endif
