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


#include <starfas/starfas.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace starfas;

namespace
{
    constexpr int exit_ok = 0;
    constexpr int exit_internal = 1;
    constexpr int exit_config = 2;

    struct Flags
    {
        std::string config;
        std::string out = ".";
        std::string in;
        std::optional<std::uint64_t> seed;
        std::optional<std::uint64_t> samples;
        unsigned threads = 0;
        std::optional<double> tol;
        std::optional<std::string> kernel;
        std::optional<std::string> ac_sigma;
    };

    void write_file(const fs::path &p, const std::string &text)
    {
        std::ofstream o(p, std::ios::binary);
        if (!o)
            throw std::runtime_error("cannot write '" + p.string() + "'");
        o << text;
        if (!o)
            throw std::runtime_error("write failed for '" + p.string() + "'");
    }

    // Command-line overrides win over the file, including variant entries
    void apply_overrides(ScenarioFile &f, const Flags &fl)
    {
        if (fl.seed)
            f.mc.seed = *fl.seed;
        if (fl.samples)
        {
            if (*fl.samples < 1000)
                throw ConfigError("--samples", "at least 1000 samples are required");
            f.mc.samples = *fl.samples;
        }
        if (fl.tol)
            f.qmc.target_abs_tol = *fl.tol;
        auto set_all = [&](const std::string &key, const std::string &value)
        {
            apply_scenario_key(f.base, key, value);
            for (auto &v : f.variants)
            {
                std::erase_if(v.overrides, [&](const auto &kv) { return kv.first == key; });
                apply_scenario_key(v.config, key, value);
            }
        };
        try
        {
            if (fl.kernel)
                set_all("kernel", *fl.kernel);
            if (fl.ac_sigma)
                set_all("ac_sigma", *fl.ac_sigma);
        }
        catch (const ConfigError &e)
        {
            throw ConfigError(e.key() == "kernel" ? "--kernel" : "--ac-sigma", e.what());
        }
        if (f.mc.samples < 1000)
            throw ConfigError("mc.samples", "at least 1000 samples are required");
        try
        {
            f.qmc.validate();
        }
        catch (const DomainError &e)
        {
            throw ConfigError(fl.tol ? "--tol" : "qmc", e.what());
        }
    }

    int run_campaign_command(const std::string &command, const Flags &fl)
    {
        ScenarioFile f = load_scenario(fl.config);
        apply_overrides(f, fl);

        std::vector<Output> outputs;
        for (Output o : f.sweep.outputs)
            if (command == "sweep" || (command == "analyze") == is_analytic(o))
                outputs.push_back(o);
        if (outputs.empty())
            outputs = command == "analyze" ? std::vector<Output>{Output::op, Output::op_asym, Output::ac}
                                           : std::vector<Output>{Output::mc_op, Output::mc_ac};
        f.sweep.outputs = outputs;

        const auto rows = run_campaign(f, fl.threads);
        const std::string csv = to_csv(rows);
        const std::string resolved = serialize_scenario_file(f);

        fs::create_directories(fl.out);
        const fs::path dir(fl.out);
        write_file(dir / (command + ".csv"), csv);
        write_file(dir / (command + ".cfg"), resolved);

        nlohmann::ordered_json m;
        m["tool"] = "starfas";
        m["version"] = version_string;
        m["command"] = command;
        m["source_config"] = fl.config;
        m["resolved_config"] = command + ".cfg";
        m["config_hash"] = hash8(resolved);
        m["csv"] = command + ".csv";
        m["csv_hash"] = hash8(csv);
        m["rows"] = rows.size();
        m["mc_seed"] = f.mc.seed;
        m["mc_samples"] = f.mc.samples;
        m["qmc_seed"] = f.qmc.seed;
        m["qmc_sample_budget"] = f.qmc.sample_budget;
        m["qmc_randomizations"] = f.qmc.randomizations;
        m["qmc_target_abs_tol"] = f.qmc.target_abs_tol;
        write_file(dir / (command + ".manifest.json"), m.dump(2) + "\n");

        std::size_t invalid = 0;
        for (const auto &r : rows)
            invalid += r.valid ? 0 : 1;
        std::printf("%s: %zu rows -> %s", command.c_str(), rows.size(), (dir / (command + ".csv")).string().c_str());
        if (invalid)
            std::printf(" (%zu in the invalid region)", invalid);
        std::printf("\n");
        return exit_ok;
    }

    int run_validate(const Flags &fl)
    {
        const auto diags = validate_config(fl.config);
        for (const auto &d : diags)
            std::printf("%s = %s: %s\n", d.key.c_str(), d.value.c_str(), d.message.c_str());
        if (diags.empty())
        {
            std::printf("%s: ok\n", fl.config.c_str());
            return exit_ok;
        }
        return exit_config;
    }

    int run_figures(const Flags &fl)
    {
        const auto table = parse_csv(read_text_file(fl.in));
        const auto figs = render_figures(table);
        fs::create_directories(fl.out);
        const std::string stem = fs::path(fl.in).stem().string();
        const fs::path dir(fl.out);
        if (figs.op_svg)
        {
            write_file(dir / (stem + "_op.svg"), *figs.op_svg);
            std::printf("wrote %s\n", (dir / (stem + "_op.svg")).string().c_str());
        }
        if (figs.ac_svg)
        {
            write_file(dir / (stem + "_ac.svg"), *figs.ac_svg);
            std::printf("wrote %s\n", (dir / (stem + "_ac.svg")).string().c_str());
        }
        return exit_ok;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"starfas - outage and capacity of phase-impaired STAR-RIS links with fluid-antenna users"};
    app.set_version_flag("--version", version_string);
    app.require_subcommand(1);

    Flags fl;
    auto add_common = [&](CLI::App *c)
    {
        c->add_option("--config", fl.config, "Scenario file")->required()->check(CLI::ExistingFile);
        c->add_option("--out", fl.out, "Output directory");
        c->add_option("--threads", fl.threads, "Worker threads (0 = auto)");
        c->add_option("--kernel", fl.kernel, "Port correlation kernel")->check(CLI::IsMember({"spherical", "cylindrical"}));
        c->add_option("--ac-sigma", fl.ac_sigma, "Capacity heuristic spread")->check(CLI::IsMember({"paper", "std"}));
    };
    auto add_mc = [&](CLI::App *c)
    {
        c->add_option("--seed", fl.seed, "Monte Carlo master seed");
        c->add_option("--samples", fl.samples, "Monte Carlo samples per point");
    };
    auto add_qmc = [&](CLI::App *c) { c->add_option("--tol", fl.tol, "Target absolute error of the copula CDF"); };

    auto *analyze = app.add_subcommand("analyze", "Closed-form outage probability and capacity");
    add_common(analyze);
    add_qmc(analyze);
    auto *simulate = app.add_subcommand("simulate", "Monte Carlo outage probability and capacity");
    add_common(simulate);
    add_mc(simulate);
    auto *sweep = app.add_subcommand("sweep", "Analytic and Monte Carlo results per the scenario's sweep");
    add_common(sweep);
    add_mc(sweep);
    add_qmc(sweep);
    auto *figures = app.add_subcommand("figures", "Render a result CSV as SVG charts");
    figures->add_option("--in", fl.in, "Result CSV")->required()->check(CLI::ExistingFile);
    figures->add_option("--out", fl.out, "Output directory");
    auto *validate = app.add_subcommand("validate", "Check a scenario file");
    validate->add_option("--config", fl.config, "Scenario file")->required()->check(CLI::ExistingFile);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try
    {
        if (*analyze)
            return run_campaign_command("analyze", fl);
        if (*simulate)
            return run_campaign_command("simulate", fl);
        if (*sweep)
            return run_campaign_command("sweep", fl);
        if (*figures)
            return run_figures(fl);
        if (*validate)
            return run_validate(fl);
    }
    catch (const ConfigError &e)
    {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config;
    }
    catch (const GeometryError &e)
    {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config;
    }
    catch (const ModelDomainError &e)
    {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config;
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_internal;
    }
    return exit_internal;
}
