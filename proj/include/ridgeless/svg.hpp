#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ridgeless/errors.hpp"
#include "ridgeless/sweep.hpp"

namespace ridgeless {

namespace detail {

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string svg_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

} // namespace detail

/// One panel per (d, n): seed-mean excess risk against bandwidth on a
/// log x axis, with the seed min/max band shaded. Output is a
/// standalone SVG with no timestamps or randomness: identical records
/// give byte-identical files.
inline void plot_risk_curves(const std::vector<SweepRecord>& records, const std::string& path) {
    std::map<std::pair<int, Eigen::Index>, std::map<double, std::vector<double>>> panels;
    std::set<double> distinct_c;
    for (const auto& r : records) {
        if (r.status != "ok" || !std::isfinite(r.risk_p_mean)) continue;
        panels[{r.d, r.n}][r.c].push_back(r.risk_p_mean);
        distinct_c.insert(r.c);
    }
    if (distinct_c.size() < 2)
        throw usage_error("plot_risk_curves: need records covering >= 2 bandwidth values");

    std::set<int> d_set;
    std::set<Eigen::Index> n_set;
    for (const auto& [key, _] : panels) {
        d_set.insert(key.first);
        n_set.insert(key.second);
    }
    const int ncols = static_cast<int>(n_set.size());
    const int nrows = static_cast<int>(d_set.size());
    const double pw = 280.0, ph = 200.0, ml = 56.0, mb = 40.0, mt = 26.0, mr = 12.0;
    const double width = ncols * pw, height = nrows * ph;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("plot_risk_curves: cannot open " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << " " << height
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    int row = 0;
    for (int d : d_set) {
        int col = 0;
        for (Eigen::Index n : n_set) {
            const auto it = panels.find({d, n});
            const double x0 = col * pw + ml, y0 = row * ph + mt;
            const double iw = pw - ml - mr, ih = ph - mt - mb;
            ++col;
            if (it == panels.end()) continue;
            const auto& by_c = it->second;

            double cmin = by_c.begin()->first, cmax = by_c.rbegin()->first;
            const double lx0 = std::log10(cmin), lx1 = std::log10(cmax);
            double ymax = 0.0;
            for (const auto& [c, v] : by_c)
                ymax = std::max(ymax, *std::max_element(v.begin(), v.end()));
            if (ymax <= 0.0) ymax = 1.0;
            ymax *= 1.06;

            auto sx = [&](double c) {
                return x0 + (lx1 > lx0 ? (std::log10(c) - lx0) / (lx1 - lx0) : 0.5) * iw;
            };
            auto sy = [&](double v) { return y0 + ih - (v / ymax) * ih; };

            // frame and title
            out << "<rect x=\"" << detail::svg_num(x0) << "\" y=\"" << detail::svg_num(y0)
                << "\" width=\"" << detail::svg_num(iw) << "\" height=\"" << detail::svg_num(ih)
                << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
            out << "<text x=\"" << detail::svg_num(x0 + 4) << "\" y=\"" << detail::svg_num(y0 - 8)
                << "\">d=" << d << ", n=" << n << "</text>\n";

            // x ticks at decades
            for (int e = static_cast<int>(std::ceil(lx0 - 1e-9)); e <= static_cast<int>(std::floor(lx1 + 1e-9)); ++e) {
                const double c = std::pow(10.0, e);
                out << "<line x1=\"" << detail::svg_num(sx(c)) << "\" y1=\"" << detail::svg_num(y0 + ih)
                    << "\" x2=\"" << detail::svg_num(sx(c)) << "\" y2=\""
                    << detail::svg_num(y0 + ih + 4) << "\" stroke=\"#444\"/>\n";
                out << "<text x=\"" << detail::svg_num(sx(c)) << "\" y=\""
                    << detail::svg_num(y0 + ih + 16) << "\" text-anchor=\"middle\">1e" << e
                    << "</text>\n";
            }
            out << "<text x=\"" << detail::svg_num(x0 + 0.5 * iw) << "\" y=\""
                << detail::svg_num(y0 + ih + 30) << "\" text-anchor=\"middle\">bandwidth c</text>\n";

            // y ticks
            for (int t = 0; t <= 4; ++t) {
                const double v = ymax * t / 4.0;
                out << "<line x1=\"" << detail::svg_num(x0 - 4) << "\" y1=\"" << detail::svg_num(sy(v))
                    << "\" x2=\"" << detail::svg_num(x0) << "\" y2=\"" << detail::svg_num(sy(v))
                    << "\" stroke=\"#444\"/>\n";
                out << "<text x=\"" << detail::svg_num(x0 - 6) << "\" y=\""
                    << detail::svg_num(sy(v) + 3) << "\" text-anchor=\"end\">"
                    << detail::svg_label(v) << "</text>\n";
            }

            // seed band
            std::string band = "<path d=\"M";
            for (auto itc = by_c.begin(); itc != by_c.end(); ++itc) {
                const double hi = *std::max_element(itc->second.begin(), itc->second.end());
                band += detail::svg_num(sx(itc->first)) + " " + detail::svg_num(sy(hi)) + " L";
            }
            for (auto itc = by_c.rbegin(); itc != by_c.rend(); ++itc) {
                const double lo = *std::min_element(itc->second.begin(), itc->second.end());
                band += detail::svg_num(sx(itc->first)) + " " + detail::svg_num(sy(lo)) + " L";
            }
            band.erase(band.size() - 2); // trailing " L"
            band += "Z\" fill=\"#9ecae1\" fill-opacity=\"0.5\" stroke=\"none\"/>\n";
            out << band;

            // mean curve
            out << "<polyline fill=\"none\" stroke=\"#1f63a8\" stroke-width=\"1.5\" points=\"";
            for (const auto& [c, v] : by_c) {
                double mean = 0.0;
                for (double x : v) mean += x;
                mean /= static_cast<double>(v.size());
                out << detail::svg_num(sx(c)) << "," << detail::svg_num(sy(mean)) << " ";
            }
            out << "\"/>\n";
        }
        ++row;
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("plot_risk_curves: write failed for " + path);
}

} // namespace ridgeless
