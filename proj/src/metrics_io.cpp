#include "stdf/metrics_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace stdf {

namespace {

constexpr const char* kHeader = "dgp,estimator,k,squared_bias,variance,mse,reps,failures";

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

std::string metrics_csv_string(const MetricsTable& table) {
    std::string out = kHeader;
    out += '\n';
    for (const auto& r : table.rows) {
        out += r.dgp + ',' + r.estimator + ',' + std::to_string(r.k) + ',' + fmt(r.squared_bias) + ',' +
               fmt(r.variance) + ',' + fmt(r.mse) + ',' + std::to_string(r.reps) + ',' +
               std::to_string(r.failures) + '\n';
    }
    return out;
}

void write_metrics_csv(const MetricsTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << metrics_csv_string(table);
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

MetricsTable read_metrics_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    MetricsTable table;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader) throw std::runtime_error(path.string() + ": unexpected header");
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        const auto bad = [&](const std::string& why) {
            return std::runtime_error(path.string() + " row " + std::to_string(row) + ": " + why);
        };
        if (cells.size() != 8) throw bad("expected 8 fields, got " + std::to_string(cells.size()));
        MetricsRow r;
        r.dgp = cells[0];
        r.estimator = cells[1];
        try {
            std::size_t used = 0;
            const auto num = [&](const std::string& s) {
                const double v = std::stod(s, &used);
                if (used != s.size()) throw std::invalid_argument(s);
                return v;
            };
            const auto count = [&](const std::string& s) {
                const auto v = std::stoull(s, &used);
                if (used != s.size()) throw std::invalid_argument(s);
                return static_cast<std::size_t>(v);
            };
            r.k = static_cast<int>(count(cells[2]));
            r.squared_bias = num(cells[3]);
            r.variance = num(cells[4]);
            r.mse = num(cells[5]);
            r.reps = count(cells[6]);
            r.failures = count(cells[7]);
        } catch (const std::exception&) {
            throw bad("non-numeric field");
        }
        table.rows.push_back(std::move(r));
    }
    return table;
}

}  // namespace stdf
