#include "stdf/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace stdf {

std::string_view to_string(Metric m) {
    switch (m) {
        case Metric::squared_bias: return "squared_bias";
        case Metric::variance: return "variance";
        case Metric::mse: return "mse";
    }
    return "?";
}

SeriesStyle series_style(std::string_view id) {
    static const std::map<std::string, SeriesStyle, std::less<>> styles = {
        {"empirical", {"black", ""}},
        {"dot-fougeres", {"purple", ""}},
        {"dot-fougeres-agg", {"red", ""}},
        {"dotagg-fougeres-agg", {"orange", ""}},
        {"dotagg-penalized", {"orange", "8,4"}},
        {"beirlant-beirlant", {"blue", ""}},
        {"beirlant-goegebeur", {"blue", "2,3"}},
        {"beirlant-penalized", {"blue", "8,4"}},
    };
    const auto it = styles.find(id);
    return it == styles.end() ? SeriesStyle{"gray", ""} : it->second;
}

namespace {

double metric_value(const MetricsRow& r, Metric m) {
    switch (m) {
        case Metric::squared_bias: return r.squared_bias;
        case Metric::variance: return r.variance;
        case Metric::mse: return r.mse;
    }
    return 0.0;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_metric_svg(const std::vector<MetricsRow>& rows, std::string_view dgp, Metric metric,
                              const PlotOptions& opt) {
    // keep first-seen estimator order so the legend follows the CSV
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    for (const auto& r : rows) {
        if (r.dgp != dgp) continue;
        const double v = metric_value(r, metric);
        if (!std::isfinite(v) || (opt.log_y && v <= 0.0)) continue;
        if (!series.count(r.estimator)) order.push_back(r.estimator);
        series[r.estimator].emplace_back(r.k, v);
    }

    double kmin = std::numeric_limits<double>::infinity(), kmax = -kmin;
    double ymin = kmin, ymax = -kmin;
    for (auto& [id, pts] : series) {
        std::sort(pts.begin(), pts.end());
        for (const auto& [k, v] : pts) {
            kmin = std::min(kmin, k);
            kmax = std::max(kmax, k);
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (series.empty()) {
        kmin = 0, kmax = 1, ymin = opt.log_y ? 1e-6 : 0.0, ymax = 1;
    }
    if (kmax <= kmin) kmax = kmin + 1;
    if (opt.log_y) {
        ymin = std::pow(10.0, std::floor(std::log10(ymin)));
        ymax = std::pow(10.0, std::ceil(std::log10(ymax)));
        if (ymax <= ymin) ymax = ymin * 10;
    } else {
        ymin = 0.0;
        ymax = ymax > 0 ? ymax * 1.05 : 1.0;
    }

    const double left = 70, right = 170, top = 40, bottom = 50;
    const double pw = opt.width - left - right, ph = opt.height - top - bottom;
    const auto sx = [&](double k) { return left + (k - kmin) / (kmax - kmin) * pw; };
    const auto sy = [&](double v) {
        const double f = opt.log_y ? (std::log10(v) - std::log10(ymin)) / (std::log10(ymax) - std::log10(ymin))
                                   : (v - ymin) / (ymax - ymin);
        return top + (1.0 - f) * ph;
    };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opt.width) + "\" height=\"" +
         std::to_string(opt.height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + num(left + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(dgp) + ": " + std::string(to_string(metric)) + "</text>\n";
    s += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
         "\" fill=\"none\" stroke=\"#444\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double k = kmin + (kmax - kmin) * i / 5.0;
        s += "<text x=\"" + num(sx(k)) + "\" y=\"" + num(top + ph + 16) + "\" text-anchor=\"middle\">" +
             num(std::round(k)) + "</text>\n";
    }
    s += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(opt.height - 12.0) +
         "\" text-anchor=\"middle\">k</text>\n";

    std::vector<double> yticks;
    if (opt.log_y) {
        for (double v = ymin; v <= ymax * 1.0001; v *= 10) yticks.push_back(v);
    } else {
        for (int i = 0; i <= 5; ++i) yticks.push_back(ymin + (ymax - ymin) * i / 5.0);
    }
    for (double v : yticks) {
        s += "<line x1=\"" + num(left) + "\" x2=\"" + num(left + pw) + "\" y1=\"" + num(sy(v)) + "\" y2=\"" +
             num(sy(v)) + "\" stroke=\"#ddd\"/>\n";
        s += "<text x=\"" + num(left - 6) + "\" y=\"" + num(sy(v) + 4) + "\" text-anchor=\"end\">" + num(v) +
             "</text>\n";
    }

    int legend_row = 0;
    for (const auto& id : order) {
        const auto& pts = series[id];
        const auto style = series_style(id);
        const std::string dash = style.dasharray.empty() ? "" : " stroke-dasharray=\"" + style.dasharray + "\"";
        s += "<polyline class=\"series\" data-estimator=\"" + escape(id) + "\" fill=\"none\" stroke=\"" +
             style.color + "\" stroke-width=\"1.8\"" + dash + " points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            s += (i ? " " : "") + num(sx(pts[i].first)) + "," + num(sy(pts[i].second));
        }
        s += "\"/>\n";
        const double ly = top + 10 + 18 * legend_row++;
        s += "<line x1=\"" + num(left + pw + 10) + "\" x2=\"" + num(left + pw + 36) + "\" y1=\"" + num(ly) +
             "\" y2=\"" + num(ly) + "\" stroke=\"" + style.color + "\" stroke-width=\"1.8\"" + dash + "/>\n";
        s += "<text x=\"" + num(left + pw + 42) + "\" y=\"" + num(ly + 4) + "\">" + escape(id) + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

std::vector<std::filesystem::path> write_metric_plots(const std::vector<MetricsRow>& rows,
                                                      const std::filesystem::path& out_dir,
                                                      const PlotOptions& options) {
    std::set<std::string> dgps;
    for (const auto& r : rows) dgps.insert(r.dgp);
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    for (const auto& dgp : dgps) {
        for (Metric m : {Metric::squared_bias, Metric::variance, Metric::mse}) {
            const auto path = out_dir / (dgp + "_" + std::string(to_string(m)) + ".svg");
            std::ofstream out(path);
            if (!out) throw std::runtime_error("cannot write " + path.string());
            out << render_metric_svg(rows, dgp, m, options);
            if (!out) throw std::runtime_error("write failed for " + path.string());
            written.push_back(path);
        }
    }
    return written;
}

}  // namespace stdf
