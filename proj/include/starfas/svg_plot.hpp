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


#ifndef STARFAS_SVG_PLOT_HPP
#define STARFAS_SVG_PLOT_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "scenario_io.hpp"

namespace starfas
{
    /// Result CSV loaded as named columns of text.
    struct CsvTable
    {
        std::vector<std::string> header;
        std::vector<std::vector<std::string>> rows;

        std::size_t column(const std::string &name) const
        {
            const auto it = std::find(header.begin(), header.end(), name);
            if (it == header.end())
                throw std::runtime_error("csv: missing column '" + name + "'");
            return static_cast<std::size_t>(it - header.begin());
        }
    };

    inline CsvTable parse_csv(const std::string &text)
    {
        CsvTable t;
        std::istringstream in(text);
        std::string line;
        bool first = true;
        while (std::getline(in, line))
        {
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty())
                continue;
            auto cells = io::split(line, ',');
            if (first)
            {
                t.header = std::move(cells);
                first = false;
                continue;
            }
            if (cells.size() != t.header.size())
                throw std::runtime_error("csv: row has " + std::to_string(cells.size()) + " fields, header has " +
                                         std::to_string(t.header.size()));
            t.rows.push_back(std::move(cells));
        }
        if (first)
            throw std::runtime_error("csv: empty input");
        return t;
    }

    struct SvgSeries
    {
        std::string label;
        std::vector<double> x, y;
        bool dashed = false;
        bool markers_only = false;
        int color = 0;
    };

    struct SvgAxes
    {
        std::string title, x_label, y_label;
        bool log_y = false;
        double y_floor = 1e-6; // lower bound of a log axis
    };

    namespace detail
    {
        inline const char *palette(int i)
        {
            static const char *colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                           "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};
            return colors[static_cast<std::size_t>(i) % 10];
        }

        inline std::string num(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.2f", v);
            return buf;
        }

        inline std::string tick(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%g", v);
            return buf;
        }

        inline std::string escape(const std::string &s)
        {
            std::string o;
            for (char c : s)
            {
                if (c == '<')
                    o += "&lt;";
                else if (c == '>')
                    o += "&gt;";
                else if (c == '&')
                    o += "&amp;";
                else
                    o += c;
            }
            return o;
        }
    }

    /// Static line chart. Log-scale y drops nonpositive points.
    inline std::string render_svg(const SvgAxes &axes, const std::vector<SvgSeries> &series)
    {
        using detail::num;
        const double W = 760, H = 520, left = 80, right = 230, top = 40, bottom = 60;
        const double pw = W - left - right, ph = H - top - bottom;

        double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
        for (const auto &s : series)
            for (std::size_t i = 0; i < s.x.size(); ++i)
            {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
                    continue;
                if (axes.log_y && s.y[i] <= 0.0)
                    continue;
                x0 = std::min(x0, s.x[i]), x1 = std::max(x1, s.x[i]);
                y0 = std::min(y0, s.y[i]), y1 = std::max(y1, s.y[i]);
            }
        if (!(x0 <= x1))
            x0 = 0, x1 = 1, y0 = axes.log_y ? axes.y_floor : 0, y1 = 1;
        if (x0 == x1)
            x0 -= 0.5, x1 += 0.5;
        if (axes.log_y)
        {
            y0 = std::pow(10.0, std::floor(std::log10(std::max(y0, axes.y_floor))));
            y1 = std::pow(10.0, std::ceil(std::log10(std::max(y1, y0 * 10.0))));
        }
        else
        {
            y0 = std::min(0.0, y0);
            y1 = y1 > y0 ? y1 * 1.05 : y0 + 1.0;
        }

        auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
        auto py = [&](double y)
        {
            const double f = axes.log_y ? (std::log10(std::max(y, y0)) - std::log10(y0)) / (std::log10(y1) - std::log10(y0))
                                        : (y - y0) / (y1 - y0);
            return top + (1.0 - f) * ph;
        };

        std::ostringstream o;
        o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
          << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
        o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        o << "<text x=\"" << num(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
          << detail::escape(axes.title) << "</text>\n";

        // grid and ticks
        o << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
        std::vector<double> yt;
        if (axes.log_y)
            for (double v = y0; v <= y1 * 1.0001; v *= 10.0)
                yt.push_back(v);
        else
            for (int i = 0; i <= 5; ++i)
                yt.push_back(y0 + (y1 - y0) * i / 5.0);
        std::vector<double> xt;
        for (int i = 0; i <= 8; ++i)
            xt.push_back(x0 + (x1 - x0) * i / 8.0);
        for (double v : yt)
            o << "<line x1=\"" << num(left) << "\" x2=\"" << num(left + pw) << "\" y1=\"" << num(py(v)) << "\" y2=\""
              << num(py(v)) << "\"/>\n";
        for (double v : xt)
            o << "<line x1=\"" << num(px(v)) << "\" x2=\"" << num(px(v)) << "\" y1=\"" << num(top) << "\" y2=\""
              << num(top + ph) << "\"/>\n";
        o << "</g>\n";
        o << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
          << "\" fill=\"none\" stroke=\"black\"/>\n";
        for (double v : yt)
            o << "<text x=\"" << num(left - 6) << "\" y=\"" << num(py(v) + 4) << "\" text-anchor=\"end\">"
              << detail::tick(v) << "</text>\n";
        for (double v : xt)
            o << "<text x=\"" << num(px(v)) << "\" y=\"" << num(top + ph + 18) << "\" text-anchor=\"middle\">"
              << detail::tick(std::round(v * 1000.0) / 1000.0) << "</text>\n";
        o << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(H - 16) << "\" text-anchor=\"middle\">"
          << detail::escape(axes.x_label) << "</text>\n";
        o << "<text transform=\"translate(20," << num(top + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
          << detail::escape(axes.y_label) << "</text>\n";

        // data
        for (const auto &s : series)
        {
            const char *c = detail::palette(s.color);
            std::string pts;
            for (std::size_t i = 0; i < s.x.size(); ++i)
            {
                if (!std::isfinite(s.y[i]) || (axes.log_y && s.y[i] <= 0.0))
                    continue;
                pts += num(px(s.x[i])) + "," + num(py(s.y[i])) + " ";
                if (s.markers_only)
                    o << "<circle cx=\"" << num(px(s.x[i])) << "\" cy=\"" << num(py(s.y[i])) << "\" r=\"3.5\" fill=\"none\" stroke=\""
                      << c << "\"/>\n";
            }
            if (!s.markers_only && !pts.empty())
                o << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.6\""
                  << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"" << pts << "\"/>\n";
        }

        // legend
        double ly = top + 8;
        for (const auto &s : series)
        {
            const char *c = detail::palette(s.color);
            const double lx = left + pw + 14;
            if (s.markers_only)
                o << "<circle cx=\"" << num(lx + 12) << "\" cy=\"" << num(ly) << "\" r=\"3.5\" fill=\"none\" stroke=\"" << c
                  << "\"/>\n";
            else
                o << "<line x1=\"" << num(lx) << "\" x2=\"" << num(lx + 24) << "\" y1=\"" << num(ly) << "\" y2=\"" << num(ly)
                  << "\" stroke=\"" << c << "\" stroke-width=\"1.6\"" << (s.dashed ? " stroke-dasharray=\"6,4\"" : "")
                  << "/>\n";
            o << "<text x=\"" << num(lx + 30) << "\" y=\"" << num(ly + 4) << "\" font-size=\"10\">"
              << detail::escape(s.label) << "</text>\n";
            ly += 16;
        }
        o << "</svg>\n";
        return o.str();
    }

    struct FigureSet
    {
        std::optional<std::string> op_svg; // log-scale outage chart
        std::optional<std::string> ac_svg; // linear capacity chart
    };

    /// Builds the outage and capacity charts for a result CSV. SNR and grid sweeps are
    /// drawn against SNR with one curve per (scenario, user[, grid]); other sweeps are
    /// drawn against the swept variable with one curve per (scenario, user, SNR).
    inline FigureSet render_figures(const CsvTable &t)
    {
        const auto c_id = t.column("scenario_id"), c_user = t.column("user"), c_var = t.column("sweep_var"),
                   c_val = t.column("sweep_value"), c_snr = t.column("snr_db");
        if (t.rows.empty())
            throw std::runtime_error("csv: no data rows");
        const std::string var = t.rows.front()[c_var];
        const bool x_is_snr = var == "snr_db" || var == "grid";

        auto value = [](const std::string &s) -> double
        { return s.empty() ? std::numeric_limits<double>::quiet_NaN() : io::to_double("csv", s); };

        std::vector<std::string> order;
        std::map<std::string, std::vector<const std::vector<std::string> *>> groups;
        for (const auto &r : t.rows)
        {
            std::string label = r[c_id].substr(0, r[c_id].find('@')) + " user " + r[c_user];
            if (var == "grid")
                label += " N:W=" + r[c_val];
            else if (!x_is_snr)
                label += " " + r[c_snr] + " dB";
            if (!groups.count(label))
                order.push_back(label);
            groups[label].push_back(&r);
        }

        auto build = [&](const std::vector<std::pair<std::string, std::string>> &cols)
        {
            std::vector<SvgSeries> out;
            int color = 0;
            for (const auto &label : order)
            {
                for (std::size_t ci = 0; ci < cols.size(); ++ci)
                {
                    const auto &[col, suffix] = cols[ci];
                    const auto cc = t.column(col);
                    SvgSeries s;
                    s.label = label + suffix;
                    s.color = color;
                    s.dashed = col == "op_asym";
                    s.markers_only = col == "op_mc" || col == "ac_mc_sum";
                    for (const auto *r : groups[label])
                    {
                        const double y = value((*r)[cc]);
                        if (std::isnan(y))
                            continue;
                        s.x.push_back(x_is_snr ? value((*r)[c_snr]) : value((*r)[c_val]));
                        s.y.push_back(y);
                    }
                    if (!s.x.empty())
                        out.push_back(std::move(s));
                }
                ++color;
            }
            return out;
        };

        FigureSet fs;
        const std::string x_label = x_is_snr ? "average SNR (dB)" : var;
        auto op_series = build({{"op_exact", ""}, {"op_asym", " asym."}, {"op_mc", " sim."}});
        if (!op_series.empty())
            fs.op_svg = render_svg({"Outage probability", x_label, "OP", true, 1e-6}, op_series);
        auto ac_series = build({{"ac_sum", ""}, {"ac_mc_sum", " sim."}});
        if (!ac_series.empty())
            fs.ac_svg = render_svg({"Sum average capacity", x_label, "C_sum (bps/Hz)", false, 0.0}, ac_series);
        return fs;
    }
}

#endif
