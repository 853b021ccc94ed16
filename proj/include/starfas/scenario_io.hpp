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


#ifndef STARFAS_SCENARIO_IO_HPP
#define STARFAS_SCENARIO_IO_HPP

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "qmc.hpp"
#include "simkit.hpp"

// Scenario files are flat "key = value" text. '#' starts a comment, dotted keys form
// sections, vectors are written "x, y, z", lists either "a, b, c" or "start:step:stop".
//
//   scenario_id = fig2
//   k_elements  = 30
//   phase_error = von_mises
//   phase_error.kappa = 8
//   grid_r.n1 = 2
//   snr_grid_db = 0:5:80
//   variants = ideal
//   variant.ideal.phase_error = ideal

namespace starfas
{
    enum class Output
    {
        op,
        op_asym,
        ac,
        mc_op,
        mc_ac
    };

    inline const char *to_string(Output o)
    {
        switch (o)
        {
        case Output::op: return "op";
        case Output::op_asym: return "op_asym";
        case Output::ac: return "ac";
        case Output::mc_op: return "mc_op";
        case Output::mc_ac: return "mc_ac";
        }
        return "?";
    }

    inline bool is_analytic(Output o) { return o == Output::op || o == Output::op_asym || o == Output::ac; }

    struct SweepSpec
    {
        std::string variable = "snr_db"; // snr_db, k_elements, beta_r, alpha_c, grid, kappa
        std::vector<std::string> values; // ignored for snr_db
        std::vector<Output> outputs{Output::op, Output::op_asym, Output::ac};

        bool has(Output o) const { return std::find(outputs.begin(), outputs.end(), o) != outputs.end(); }
    };

    struct Variant
    {
        std::string name; // empty for the base scenario
        std::vector<std::pair<std::string, std::string>> overrides;
        ScenarioConfig config;
    };

    struct ScenarioFile
    {
        ScenarioConfig base;
        std::vector<Variant> variants; // the base scenario first, then the declared variants
        SweepSpec sweep;
        McSettings mc;
        QmcSettings qmc;
        std::vector<std::pair<std::string, std::string>> entries; // base entries in file order
    };

    struct Diagnostic
    {
        std::string key;
        std::string value;
        std::string message;
    };

    namespace io
    {
        inline std::string trim(std::string_view s)
        {
            std::size_t a = 0, b = s.size();
            while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
                ++a;
            while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
                --b;
            return std::string(s.substr(a, b - a));
        }

        inline std::vector<std::string> split(std::string_view s, char sep)
        {
            std::vector<std::string> out;
            std::size_t start = 0;
            for (;;)
            {
                const auto pos = s.find(sep, start);
                out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
                if (pos == std::string_view::npos)
                    break;
                start = pos + 1;
            }
            return out;
        }

        inline double to_double(const std::string &key, std::string_view text)
        {
            const std::string t = trim(text);
            if (t == "inf" || t == "+inf")
                return std::numeric_limits<double>::infinity();
            if (t == "-inf")
                return -std::numeric_limits<double>::infinity();
            double v = 0.0;
            const char *first = t.data();
            if (!t.empty() && t[0] == '+')
                ++first;
            const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
            if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
                throw ConfigError(key, "expected a number, got '" + t + "'");
            return v;
        }

        inline std::int64_t to_int(const std::string &key, std::string_view text)
        {
            const std::string t = trim(text);
            std::int64_t v = 0;
            const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
            if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
                throw ConfigError(key, "expected an integer, got '" + t + "'");
            return v;
        }

        inline std::uint64_t to_uint(const std::string &key, std::string_view text)
        {
            const std::string t = trim(text);
            std::uint64_t v = 0;
            int base = 10;
            const char *first = t.data();
            if (t.size() > 2 && t[0] == '0' && (t[1] == 'x' || t[1] == 'X'))
                base = 16, first += 2;
            const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v, base);
            if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
                throw ConfigError(key, "expected an unsigned integer, got '" + t + "'");
            return v;
        }

        inline Vec3 to_vec3(const std::string &key, std::string_view text)
        {
            const auto parts = split(text, ',');
            if (parts.size() != 3)
                throw ConfigError(key, "expected three comma-separated coordinates");
            return {to_double(key, parts[0]), to_double(key, parts[1]), to_double(key, parts[2])};
        }

        // "a, b, c" or "start:step:stop" (inclusive, with a half-step tolerance at the end)
        inline std::vector<double> to_list(const std::string &key, std::string_view text)
        {
            const std::string t = trim(text);
            if (t.empty())
                throw ConfigError(key, "empty list");
            if (t.find(':') != std::string::npos && t.find(',') == std::string::npos)
            {
                const auto parts = split(t, ':');
                if (parts.size() != 3)
                    throw ConfigError(key, "range must be start:step:stop");
                const double a = to_double(key, parts[0]), h = to_double(key, parts[1]), b = to_double(key, parts[2]);
                if (!(h > 0.0) || b < a)
                    throw ConfigError(key, "range needs a positive step and stop >= start");
                const auto count = static_cast<std::size_t>(std::floor((b - a) / h + 0.5)) + 1;
                if (count > 100000)
                    throw ConfigError(key, "range has too many points");
                std::vector<double> out(count);
                for (std::size_t i = 0; i < count; ++i)
                    out[i] = a + h * static_cast<double>(i);
                return out;
            }
            std::vector<double> out;
            for (const auto &p : split(t, ','))
                out.push_back(to_double(key, p));
            return out;
        }

        // Shortest round-trip text of a double
        inline std::string fmt(double v)
        {
            if (std::isinf(v))
                return v > 0 ? "inf" : "-inf";
            char buf[64];
            const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
            return std::string(buf, ptr);
        }

        inline std::string fmt(const Vec3 &v) { return fmt(v.x) + ", " + fmt(v.y) + ", " + fmt(v.z); }

        inline std::string fmt_list(const std::vector<double> &v)
        {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i)
                s += (i ? ", " : "") + fmt(v[i]);
            return s;
        }

        inline std::string lower(std::string s)
        {
            for (auto &c : s)
                c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            return s;
        }

        inline CorrelationKernel to_kernel(const std::string &key, const std::string &v)
        {
            const auto s = lower(v);
            if (s == "spherical")
                return CorrelationKernel::spherical;
            if (s == "cylindrical")
                return CorrelationKernel::cylindrical;
            throw ConfigError(key, "expected spherical or cylindrical, got '" + v + "'");
        }

        inline AcSigma to_ac_sigma(const std::string &key, const std::string &v)
        {
            const auto s = lower(v);
            if (s == "paper")
                return AcSigma::paper;
            if (s == "std")
                return AcSigma::std_dev;
            throw ConfigError(key, "expected paper or std, got '" + v + "'");
        }

        inline Output to_output(const std::string &key, const std::string &v)
        {
            for (Output o : {Output::op, Output::op_asym, Output::ac, Output::mc_op, Output::mc_ac})
                if (v == to_string(o))
                    return o;
            throw ConfigError(key, "unknown output '" + v + "'");
        }

        inline FasGrid &grid_for(ScenarioConfig &cfg, const std::string &section)
        {
            return section == "grid_r" ? cfg.grid_r : cfg.grid_t;
        }
    }

    inline const char *to_string(CorrelationKernel k) { return k == CorrelationKernel::spherical ? "spherical" : "cylindrical"; }
    inline const char *to_string(AcSigma s) { return s == AcSigma::paper ? "paper" : "std"; }

    /// Sets one scenario field from its text value. Throws ConfigError naming the key.
    inline void apply_scenario_key(ScenarioConfig &cfg, const std::string &key, const std::string &value)
    {
        using namespace io;
        if (key == "scenario_id")
        {
            if (value.empty())
                throw ConfigError(key, "must not be empty");
            cfg.scenario_id = value;
        }
        else if (key == "bs_position")
            cfg.bs_position = to_vec3(key, value);
        else if (key == "ris_position")
            cfg.ris_position = to_vec3(key, value);
        else if (key == "user_r_position")
            cfg.user_r_position = to_vec3(key, value);
        else if (key == "user_t_position")
            cfg.user_t_position = to_vec3(key, value);
        else if (key == "chi")
            cfg.chi = to_double(key, value);
        else if (key == "k_elements")
        {
            const auto k = to_int(key, value);
            if (k < 1 || k > 1000000)
                throw ConfigError(key, "element count must lie in [1, 1e6]");
            cfg.k_elements = static_cast<int>(k);
        }
        else if (key == "beta_r")
            cfg.beta_r = to_double(key, value);
        else if (key == "alpha_c")
            cfg.alpha_c = to_double(key, value);
        else if (key == "private_split_r")
            cfg.private_split_r = to_double(key, value);
        else if (key == "rice_k")
            cfg.rice_k = to_double(key, value);
        else if (key == "phase_error")
        {
            const auto s = lower(value);
            if (s == "ideal")
                cfg.phase_error.kind = PhaseErrorModel::Kind::ideal;
            else if (s == "von_mises")
                cfg.phase_error.kind = PhaseErrorModel::Kind::von_mises;
            else
                throw ConfigError(key, "expected ideal or von_mises, got '" + value + "'");
        }
        else if (key == "phase_error.kappa")
            cfg.phase_error.kappa = to_double(key, value);
        else if (key.starts_with("grid_r.") || key.starts_with("grid_t."))
        {
            FasGrid &g = grid_for(cfg, key.substr(0, 6));
            const std::string field = key.substr(7);
            if (field == "n1" || field == "n2")
            {
                const auto n = to_int(key, value);
                if (n < 1 || n > 64)
                    throw ConfigError(key, "ports per dimension must lie in [1, 64]");
                (field == "n1" ? g.n1 : g.n2) = static_cast<int>(n);
            }
            else if (field == "w1")
                g.w1 = to_double(key, value);
            else if (field == "w2")
                g.w2 = to_double(key, value);
            else
                throw ConfigError(key, "unknown grid field");
        }
        else if (key == "copula_nu")
            cfg.copula_nu = to_double(key, value);
        else if (key == "thresholds.r.gamma_th_c_db")
            cfg.thresholds_r.gamma_th_c_db = to_double(key, value);
        else if (key == "thresholds.r.gamma_th_p_db")
            cfg.thresholds_r.gamma_th_p_db = to_double(key, value);
        else if (key == "thresholds.t.gamma_th_c_db")
            cfg.thresholds_t.gamma_th_c_db = to_double(key, value);
        else if (key == "thresholds.t.gamma_th_p_db")
            cfg.thresholds_t.gamma_th_p_db = to_double(key, value);
        else if (key == "snr_grid_db")
            cfg.snr_grid_db = to_list(key, value);
        else if (key == "kernel")
            cfg.kernel = to_kernel(key, value);
        else if (key == "ac_sigma")
            cfg.ac_sigma = to_ac_sigma(key, value);
        else
            throw ConfigError(key, "unknown key");
    }

    /// Applies one sweep value to a scenario. `grid` values are "N:W", a square grid
    /// of N ports over W wavelengths^2 for both users.
    inline void apply_sweep_value(ScenarioConfig &cfg, const std::string &variable, const std::string &value)
    {
        using namespace io;
        const std::string key = "sweep.values";
        if (variable == "snr_db")
            cfg.snr_grid_db = {to_double(key, value)};
        else if (variable == "k_elements")
            apply_scenario_key(cfg, "k_elements", value);
        else if (variable == "beta_r")
            cfg.beta_r = to_double(key, value);
        else if (variable == "alpha_c")
            cfg.alpha_c = to_double(key, value);
        else if (variable == "kappa")
            cfg.phase_error = PhaseErrorModel::von_mises(to_double(key, value));
        else if (variable == "grid")
        {
            const auto parts = split(value, ':');
            if (parts.size() != 2)
                throw ConfigError(key, "grid values are N:W, got '" + value + "'");
            const auto n = to_int(key, parts[0]);
            const auto side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
            if (n < 1 || static_cast<std::int64_t>(side) * side != n)
                throw ConfigError(key, "grid port count must be a perfect square, got '" + parts[0] + "'");
            const double w = to_double(key, parts[1]);
            if (!(w >= 0.0))
                throw ConfigError(key, "grid area must be nonnegative");
            cfg.grid_r = cfg.grid_t = FasGrid::square(side, w);
        }
        else
            throw ConfigError("sweep.variable", "unknown sweep variable '" + variable + "'");
    }

    /// Canonical text of a scenario; round-trips through parse_scenario.
    inline std::string serialize_scenario(const ScenarioConfig &c)
    {
        using io::fmt;
        std::ostringstream o;
        auto kv = [&](const std::string &k, const std::string &v) { o << k << " = " << v << '\n'; };
        kv("scenario_id", c.scenario_id);
        kv("bs_position", fmt(c.bs_position));
        kv("ris_position", fmt(c.ris_position));
        kv("user_r_position", fmt(c.user_r_position));
        kv("user_t_position", fmt(c.user_t_position));
        kv("chi", fmt(c.chi));
        kv("k_elements", std::to_string(c.k_elements));
        kv("beta_r", fmt(c.beta_r));
        kv("alpha_c", fmt(c.alpha_c));
        kv("private_split_r", fmt(c.private_split_r));
        kv("rice_k", fmt(c.rice_k));
        kv("phase_error", c.phase_error.kind == PhaseErrorModel::Kind::ideal ? "ideal" : "von_mises");
        kv("phase_error.kappa", fmt(c.phase_error.kappa));
        for (const char *s : {"grid_r", "grid_t"})
        {
            const FasGrid &g = std::string(s) == "grid_r" ? c.grid_r : c.grid_t;
            kv(std::string(s) + ".n1", std::to_string(g.n1));
            kv(std::string(s) + ".n2", std::to_string(g.n2));
            kv(std::string(s) + ".w1", fmt(g.w1));
            kv(std::string(s) + ".w2", fmt(g.w2));
        }
        kv("copula_nu", fmt(c.copula_nu));
        kv("thresholds.r.gamma_th_c_db", fmt(c.thresholds_r.gamma_th_c_db));
        kv("thresholds.r.gamma_th_p_db", fmt(c.thresholds_r.gamma_th_p_db));
        kv("thresholds.t.gamma_th_c_db", fmt(c.thresholds_t.gamma_th_c_db));
        kv("thresholds.t.gamma_th_p_db", fmt(c.thresholds_t.gamma_th_p_db));
        kv("snr_grid_db", io::fmt_list(c.snr_grid_db));
        kv("kernel", to_string(c.kernel));
        kv("ac_sigma", to_string(c.ac_sigma));
        return o.str();
    }

    // 64-bit FNV-1a
    inline std::uint64_t fnv1a(std::string_view s)
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : s)
        {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    inline std::string hash8(std::string_view s)
    {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(s)));
        return std::string(buf, 8);
    }

    /// Parses scenario text. Throws ConfigError naming the offending key (or line).
    inline ScenarioFile parse_scenario(const std::string &text)
    {
        using namespace io;
        ScenarioFile f;
        std::vector<std::string> variant_names;
        std::map<std::string, std::vector<std::pair<std::string, std::string>>> overrides;
        std::map<std::string, int> seen;

        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line))
        {
            ++lineno;
            if (const auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            const std::string t = trim(line);
            if (t.empty())
                continue;
            const auto eq = t.find('=');
            if (eq == std::string::npos)
                throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
            const std::string key = trim(std::string_view(t).substr(0, eq));
            const std::string value = trim(std::string_view(t).substr(eq + 1));
            if (key.empty())
                throw ConfigError("line " + std::to_string(lineno), "missing key");
            if (seen[key]++)
                throw ConfigError(key, "duplicate key");

            if (key == "variants")
            {
                for (const auto &v : split(value, ','))
                {
                    if (v.empty() || v.find_first_of("./@ ") != std::string::npos)
                        throw ConfigError(key, "invalid variant name '" + v + "'");
                    variant_names.push_back(v);
                }
            }
            else if (key.starts_with("variant."))
            {
                const auto dot = key.find('.', 8);
                if (dot == std::string::npos)
                    throw ConfigError(key, "expected variant.<name>.<key>");
                overrides[key.substr(8, dot - 8)].emplace_back(key.substr(dot + 1), value);
            }
            else if (key == "sweep.variable")
            {
                static const char *allowed[] = {"snr_db", "k_elements", "beta_r", "alpha_c", "grid", "kappa"};
                if (std::find(std::begin(allowed), std::end(allowed), value) == std::end(allowed))
                    throw ConfigError(key, "unknown sweep variable '" + value + "'");
                f.sweep.variable = value;
            }
            else if (key == "sweep.values")
                f.sweep.values = split(value, ',');
            else if (key == "sweep.outputs")
            {
                f.sweep.outputs.clear();
                for (const auto &o : split(value, ','))
                    f.sweep.outputs.push_back(to_output(key, o));
            }
            else if (key == "mc.samples")
                f.mc.samples = to_uint(key, value);
            else if (key == "mc.seed")
                f.mc.seed = to_uint(key, value);
            else if (key == "qmc.sample_budget")
                f.qmc.sample_budget = to_uint(key, value);
            else if (key == "qmc.randomizations")
                f.qmc.randomizations = static_cast<std::uint32_t>(to_uint(key, value));
            else if (key == "qmc.target_abs_tol")
                f.qmc.target_abs_tol = to_double(key, value);
            else if (key == "qmc.seed")
                f.qmc.seed = to_uint(key, value);
            else
            {
                apply_scenario_key(f.base, key, value);
                f.entries.emplace_back(key, value);
            }
        }

        for (const auto &[name, ov] : overrides)
            if (std::find(variant_names.begin(), variant_names.end(), name) == variant_names.end())
                throw ConfigError("variant." + name, "variant is not listed in 'variants'");

        if (f.sweep.variable != "snr_db" && f.sweep.values.empty())
            throw ConfigError("sweep.values", "a sweep over '" + f.sweep.variable + "' needs values");
        if (f.sweep.outputs.empty())
            throw ConfigError("sweep.outputs", "at least one output is required");

        f.variants.push_back({"", {}, f.base});
        for (const auto &name : variant_names)
        {
            Variant v{name, overrides[name], f.base};
            for (const auto &[k, val] : v.overrides)
            {
                if (k == "scenario_id")
                    throw ConfigError("variant." + name + "." + k, "scenario_id cannot be overridden");
                try
                {
                    apply_scenario_key(v.config, k, val);
                }
                catch (const ConfigError &e)
                {
                    throw ConfigError("variant." + name + "." + k, e.what());
                }
            }
            f.variants.push_back(std::move(v));
        }
        // dry run over the sweep values so bad values surface at load time
        for (const auto &v : f.variants)
            for (const auto &sv : f.sweep.values)
            {
                ScenarioConfig probe = v.config;
                apply_sweep_value(probe, f.sweep.variable, sv);
            }
        return f;
    }

    inline std::string read_text_file(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::runtime_error("cannot read '" + path + "'");
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    inline ScenarioFile load_scenario(const std::string &path) { return parse_scenario(read_text_file(path)); }

    /// Text that reproduces `f` exactly (base, variants, sweep, MC and QMC settings).
    inline std::string serialize_scenario_file(const ScenarioFile &f)
    {
        using io::fmt;
        std::ostringstream o;
        o << serialize_scenario(f.base);
        std::string names;
        for (const auto &v : f.variants)
            if (!v.name.empty())
                names += (names.empty() ? "" : ", ") + v.name;
        if (!names.empty())
        {
            o << "variants = " << names << '\n';
            for (const auto &v : f.variants)
                for (const auto &[k, val] : v.overrides)
                    o << "variant." << v.name << '.' << k << " = " << val << '\n';
        }
        o << "sweep.variable = " << f.sweep.variable << '\n';
        if (!f.sweep.values.empty())
        {
            o << "sweep.values = ";
            for (std::size_t i = 0; i < f.sweep.values.size(); ++i)
                o << (i ? ", " : "") << f.sweep.values[i];
            o << '\n';
        }
        o << "sweep.outputs = ";
        for (std::size_t i = 0; i < f.sweep.outputs.size(); ++i)
            o << (i ? ", " : "") << to_string(f.sweep.outputs[i]);
        o << '\n';
        o << "mc.samples = " << f.mc.samples << '\n';
        o << "mc.seed = " << f.mc.seed << '\n';
        o << "qmc.sample_budget = " << f.qmc.sample_budget << '\n';
        o << "qmc.randomizations = " << f.qmc.randomizations << '\n';
        o << "qmc.target_abs_tol = " << fmt(f.qmc.target_abs_tol) << '\n';
        o << "qmc.seed = " << f.qmc.seed << '\n';
        return o.str();
    }

    /// Invariant and validity checks on a fully resolved scenario. Empty when all hold.
    inline std::vector<Diagnostic> validate_scenario(const ScenarioConfig &c, const std::string &prefix = "")
    {
        using io::fmt;
        std::vector<Diagnostic> d;
        auto add = [&](const std::string &k, const std::string &v, const std::string &m) { d.push_back({prefix + k, v, m}); };

        if (!(c.chi > 2.0) || !std::isfinite(c.chi))
            add("chi", fmt(c.chi), "path-loss exponent must be finite and > 2");
        if (c.k_elements < 1)
            add("k_elements", std::to_string(c.k_elements), "element count must be >= 1");
        if (!(c.beta_r >= 0.0 && c.beta_r <= 1.0))
            add("beta_r", fmt(c.beta_r), "reflection amplitude must lie in [0, 1]");
        if (!(c.alpha_c > 0.0 && c.alpha_c < 1.0))
            add("alpha_c", fmt(c.alpha_c), "common power fraction must lie in (0, 1)");
        if (!(c.private_split_r > 0.0 && c.private_split_r < 1.0))
            add("private_split_r", fmt(c.private_split_r), "private split must lie in (0, 1)");
        if (!(c.rice_k >= 0.0) || !std::isfinite(c.rice_k))
            add("rice_k", fmt(c.rice_k), "Rice factor must be finite and >= 0");
        if (c.phase_error.kind == PhaseErrorModel::Kind::von_mises && !(c.phase_error.kappa >= 0.0))
            add("phase_error.kappa", fmt(c.phase_error.kappa), "concentration must be >= 0");
        for (const char *s : {"grid_r", "grid_t"})
        {
            const FasGrid &g = std::string(s) == "grid_r" ? c.grid_r : c.grid_t;
            if (g.n1 < 1)
                add(std::string(s) + ".n1", std::to_string(g.n1), "must be >= 1");
            if (g.n2 < 1)
                add(std::string(s) + ".n2", std::to_string(g.n2), "must be >= 1");
            if (!(g.w1 >= 0.0) || !std::isfinite(g.w1))
                add(std::string(s) + ".w1", fmt(g.w1), "must be finite and >= 0");
            if (!(g.w2 >= 0.0) || !std::isfinite(g.w2))
                add(std::string(s) + ".w2", fmt(g.w2), "must be finite and >= 0");
        }
        if (!(c.copula_nu >= 1.0))
            add("copula_nu", fmt(c.copula_nu), "copula degrees of freedom must be >= 1");
        if (c.snr_grid_db.empty())
            add("snr_grid_db", "", "SNR grid must not be empty");
        for (double s : c.snr_grid_db)
            if (!std::isfinite(s))
            {
                add("snr_grid_db", fmt(s), "SNR points must be finite");
                break;
            }
        if (c.bs_position == c.ris_position)
            add("ris_position", fmt(c.ris_position), "RIS coincides with the BS");
        for (User u : {User::r, User::t})
        {
            const std::string k = std::string("user_") + to_string(u) + "_position";
            if (c.user_position(u) == c.ris_position)
                add(k, fmt(c.user_position(u)), "user coincides with the RIS");
            else if (c.user_position(u) == c.bs_position)
                add(k, fmt(c.user_position(u)), "user coincides with the BS");
        }

        // Target reachability: the common SINR ceiling is alpha_c / (alpha_p,r + alpha_p,t)
        // and the private one alpha_p,u / alpha_p,other.
        if (c.alpha_c > 0.0 && c.alpha_c < 1.0 && c.private_split_r > 0.0 && c.private_split_r < 1.0)
        {
            const auto ps = rsma_power_split(c);
            for (User u : {User::r, User::t})
            {
                const auto &th = c.thresholds(u);
                const std::string base = std::string("thresholds.") + to_string(u);
                if (ps.alpha_c - ps.private_total() * db_to_linear(th.gamma_th_c_db) <= 0.0)
                    add(base + ".gamma_th_c_db", fmt(th.gamma_th_c_db),
                        "common-message constraint violated: target must stay below alpha_c/(1-alpha_c) = " +
                            fmt(ps.alpha_c / ps.private_total()));
                if (ps.private_power(u) - ps.private_power(other(u)) * db_to_linear(th.gamma_th_p_db) <= 0.0)
                    add(base + ".gamma_th_p_db", fmt(th.gamma_th_p_db),
                        "private-message constraint violated: target must stay below " +
                            fmt(ps.private_power(u) / ps.private_power(other(u))));
            }
        }
        return d;
    }

    /// Diagnostics for a scenario file: parse errors, then invariants of every variant.
    inline std::vector<Diagnostic> validate_config(const std::string &path)
    {
        const std::string text = read_text_file(path); // I/O errors propagate
        ScenarioFile f;
        try
        {
            f = parse_scenario(text);
        }
        catch (const ConfigError &e)
        {
            return {{e.key(), "", e.what()}};
        }
        std::vector<Diagnostic> out;
        try
        {
            f.qmc.validate();
        }
        catch (const std::exception &e)
        {
            out.push_back({"qmc", "", e.what()});
        }
        if (f.mc.samples < 1000)
            out.push_back({"mc.samples", std::to_string(f.mc.samples), "at least 1000 samples are required"});
        for (const auto &v : f.variants)
        {
            auto d = validate_scenario(v.config, v.name.empty() ? "" : "variant." + v.name + ".");
            out.insert(out.end(), d.begin(), d.end());
        }
        return out;
    }
}

#endif
