#include "stdf/experiment_config.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace stdf {

namespace {

constexpr const char* kToolVersion = "0.1.0";

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_double(std::string_view s) {
    const std::string t = trim(s);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (t.empty() || used != t.size()) throw std::invalid_argument("not a number: '" + t + "'");
    return v;
}

long long parse_integer(std::string_view s) {
    const std::string t = trim(s);
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(t, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (t.empty() || used != t.size()) throw std::invalid_argument("not an integer: '" + t + "'");
    return v;
}

std::string format_int_list(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}

std::string format_double_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_double(v[i]);
    return out;
}

struct Field {
    std::string key;
    std::function<std::string(const ExperimentConfig&)> get;
    std::function<void(ExperimentConfig&, const std::string&)> set;
};

const EstimatorTuning& tuning_of(const ExperimentConfig& c) {
    static const EstimatorTuning fallback = EstimatorTuning::defaults();
    return c.estimators.empty() ? fallback : c.estimators.front().tuning;
}

template <class Fn>
void for_each_tuning(ExperimentConfig& c, Fn fn) {
    for (auto& e : c.estimators) fn(e.tuning);
}

Field tuning_double(std::string key, double EstimatorTuning::*member) {
    return {std::move(key), [member](const ExperimentConfig& c) { return format_double(tuning_of(c).*member); },
            [member](ExperimentConfig& c, const std::string& v) {
                const double d = parse_double(v);
                for_each_tuning(c, [&](EstimatorTuning& t) { t.*member = d; });
            }};
}

template <class Get, class Set>
Field tuning_field(std::string key, Get get, Set set) {
    return {std::move(key), [get](const ExperimentConfig& c) { return get(tuning_of(c)); },
            [set](ExperimentConfig& c, const std::string& v) {
                for_each_tuning(c, [&](EstimatorTuning& t) { set(t, v); });
            }};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        f.push_back({"experiment.estimators",
                     [](const ExperimentConfig& c) {
                         std::string out;
                         for (std::size_t i = 0; i < c.estimators.size(); ++i) {
                             out += (i ? "," : "") + c.estimators[i].id;
                         }
                         return out;
                     },
                     [](ExperimentConfig& c, const std::string& v) {
                         // new estimators inherit the current tuning
                         const EstimatorTuning t = tuning_of(c);
                         c.estimators.clear();
                         for (const auto& id : split(v, ',')) {
                             if (id.empty()) continue;
                             auto e = estimator_from_id(id);
                             e.tuning = t;
                             c.estimators.push_back(std::move(e));
                         }
                     }});
        f.push_back({"experiment.dgp", [](const ExperimentConfig& c) { return c.dgp.name; },
                     [](ExperimentConfig& c, const std::string& v) { c.dgp = dgp_from_name(v); }});
        f.push_back({"experiment.n", [](const ExperimentConfig& c) { return std::to_string(c.n); },
                     [](ExperimentConfig& c, const std::string& v) {
                         const auto n = parse_integer(v);
                         if (n < 1) throw std::invalid_argument("n must be positive");
                         c.n = static_cast<std::size_t>(n);
                     }});
        f.push_back({"experiment.reps", [](const ExperimentConfig& c) { return std::to_string(c.reps); },
                     [](ExperimentConfig& c, const std::string& v) {
                         const auto n = parse_integer(v);
                         if (n < 1) throw std::invalid_argument("reps must be positive");
                         c.reps = static_cast<std::size_t>(n);
                     }});
        f.push_back({"experiment.seed", [](const ExperimentConfig& c) { return std::to_string(c.seed); },
                     [](ExperimentConfig& c, const std::string& v) {
                         c.seed = std::stoull(trim(v));
                     }});
        f.push_back({"experiment.k_grid", [](const ExperimentConfig& c) { return format_int_list(c.k_grid); },
                     [](ExperimentConfig& c, const std::string& v) { c.k_grid = parse_int_list(v); }});
        f.push_back({"experiment.eval_points",
                     [](const ExperimentConfig& c) { return format_points(c.eval_points); },
                     [](ExperimentConfig& c, const std::string& v) { c.eval_points = parse_points(v); }});

        f.push_back(tuning_double("tuning.dot.a", &EstimatorTuning::dot_a));
        f.push_back(tuning_field(
            "tuning.dot.kset", [](const EstimatorTuning& t) { return format_int_list(t.kset); },
            [](EstimatorTuning& t, const std::string& v) { t.kset = parse_int_list(v); }));
        f.push_back(tuning_field(
            "tuning.beirlant.kbar", [](const EstimatorTuning& t) { return std::to_string(t.beirlant.kbar); },
            [](EstimatorTuning& t, const std::string& v) { t.beirlant.kbar = static_cast<int>(parse_integer(v)); }));
        f.push_back(tuning_field(
            "tuning.beirlant.tau", [](const EstimatorTuning& t) { return format_double(t.beirlant.tau); },
            [](EstimatorTuning& t, const std::string& v) { t.beirlant.tau = parse_double(v); }));
        f.push_back(tuning_field(
            "tuning.beirlant.tau_b", [](const EstimatorTuning& t) { return format_double(t.beirlant.tau_b); },
            [](EstimatorTuning& t, const std::string& v) { t.beirlant.tau_b = parse_double(v); }));
        f.push_back(tuning_field(
            "tuning.ratio.kbar", [](const EstimatorTuning& t) { return std::to_string(t.ratio.kbar); },
            [](EstimatorTuning& t, const std::string& v) { t.ratio.kbar = static_cast<int>(parse_integer(v)); }));
        f.push_back(tuning_field(
            "tuning.ratio.a", [](const EstimatorTuning& t) { return format_double(t.ratio.a); },
            [](EstimatorTuning& t, const std::string& v) { t.ratio.a = parse_double(v); }));
        f.push_back(tuning_field(
            "tuning.ratio.r", [](const EstimatorTuning& t) { return format_double(t.ratio.r); },
            [](EstimatorTuning& t, const std::string& v) { t.ratio.r = parse_double(v); }));
        f.push_back(tuning_field(
            "tuning.ratio.fallback_threshold",
            [](const EstimatorTuning& t) { return format_double(t.ratio.fallback_threshold); },
            [](EstimatorTuning& t, const std::string& v) { t.ratio.fallback_threshold = parse_double(v); }));
        f.push_back(tuning_field(
            "tuning.ratio.fallback_value",
            [](const EstimatorTuning& t) { return format_double(t.ratio.fallback_value); },
            [](EstimatorTuning& t, const std::string& v) { t.ratio.fallback_value = parse_double(v); }));
        f.push_back(tuning_field(
            "tuning.ratio.agg_points", [](const EstimatorTuning& t) { return format_points(t.fougeres_agg_points); },
            [](EstimatorTuning& t, const std::string& v) { t.fougeres_agg_points = parse_points(v); }));
        f.push_back(tuning_double("tuning.beirlant_rho.tau", &EstimatorTuning::beirlant_rho_tau));
        f.push_back(tuning_double("tuning.goegebeur.tau", &EstimatorTuning::goegebeur_tau));
        f.push_back(tuning_double("tuning.goegebeur.xi1", &EstimatorTuning::goegebeur_xi1));
        f.push_back(tuning_double("tuning.goegebeur.xi2", &EstimatorTuning::goegebeur_xi2));
        f.push_back(tuning_field(
            "tuning.penalized.index_set",
            [](const EstimatorTuning& t) { return format_int_list(t.penalized.index_set); },
            [](EstimatorTuning& t, const std::string& v) {
                t.penalized.index_set = parse_int_list(v);
                t.penalized.weights = proportional_weights(t.penalized.index_set);
            }));
        f.push_back(tuning_field(
            "tuning.penalized.k_rho", [](const EstimatorTuning& t) { return format_double(t.penalized.k_rho); },
            [](EstimatorTuning& t, const std::string& v) { t.penalized.k_rho = parse_double(v); }));
        f.push_back(tuning_field(
            "tuning.penalized.k_lo", [](const EstimatorTuning& t) { return format_double(t.penalized.k_lo); },
            [](EstimatorTuning& t, const std::string& v) { t.penalized.k_lo = parse_double(v); }));
        f.push_back(tuning_field(
            "tuning.penalized.k_hi", [](const EstimatorTuning& t) { return format_double(t.penalized.k_hi); },
            [](EstimatorTuning& t, const std::string& v) { t.penalized.k_hi = parse_double(v); }));
        f.push_back(tuning_field(
            "tuning.penalized.eta", [](const EstimatorTuning& t) { return format_double(t.penalized.eta); },
            [](EstimatorTuning& t, const std::string& v) { t.penalized.eta = parse_double(v); }));
        f.push_back(tuning_field(
            "tuning.penalized.grid", [](const EstimatorTuning& t) { return format_double_list(t.penalized.grid); },
            [](EstimatorTuning& t, const std::string& v) { t.penalized.grid = parse_double_list(v); }));
        f.push_back(tuning_field(
            "tuning.penalized.eval_points",
            [](const EstimatorTuning& t) { return format_points(t.penalized.eval_points); },
            [](EstimatorTuning& t, const std::string& v) { t.penalized.eval_points = parse_points(v); }));
        return f;
    }();
    return table;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    if (v == std::trunc(v) && std::fabs(v) < 1e15) {
        std::snprintf(buf, sizeof buf, "%.0f", v);
        return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // prefer the shortest form that round-trips
    for (int prec = 1; prec <= 17; ++prec) {
        char shorter[40];
        std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
        if (std::stod(shorter) == v) return shorter;
    }
    return buf;
}

std::vector<int> parse_int_list(std::string_view s) {
    std::vector<int> out;
    for (const auto& tok : split(s, ',')) {
        if (tok.empty()) continue;
        out.push_back(static_cast<int>(parse_integer(tok)));
    }
    return out;
}

std::vector<double> parse_double_list(std::string_view s) {
    std::vector<double> out;
    for (const auto& tok : split(s, ',')) {
        if (tok.empty()) continue;
        out.push_back(parse_double(tok));
    }
    return out;
}

std::vector<Point> parse_points(std::string_view s) {
    std::vector<Point> out;
    for (const auto& tok : split(s, ',')) {
        if (tok.empty()) continue;
        std::vector<double> coords;
        for (const auto& c : split(tok, ':')) coords.push_back(parse_double(c));
        out.emplace_back(std::move(coords));
    }
    return out;
}

std::string format_points(const std::vector<Point>& points) {
    std::string out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i) out += ",";
        for (std::size_t j = 0; j < points[i].dim(); ++j) out += (j ? ":" : "") + format_double(points[i][j]);
    }
    return out;
}

std::map<std::string, std::string> parse_key_values(std::string_view text) {
    std::map<std::string, std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = trim(body.substr(0, eq));
        if (key.empty()) throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
        out[key] = trim(body.substr(eq + 1));
    }
    return out;
}

void apply_entries(ExperimentConfig& config, const std::map<std::string, std::string>& entries) {
    for (const auto& [key, value] : entries) {
        const bool known =
            std::any_of(fields().begin(), fields().end(), [&](const Field& f) { return f.key == key; });
        if (!known) throw std::invalid_argument("unknown config key '" + key + "'");
    }
    // table order applies experiment.estimators before any tuning key
    for (const auto& f : fields()) {
        const auto it = entries.find(f.key);
        if (it == entries.end()) continue;
        try {
            f.set(config, it->second);
        } catch (const std::exception& e) {
            throw std::invalid_argument("config key '" + f.key + "': " + e.what());
        }
    }
}

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& config) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& f : fields()) out.emplace_back(f.key, f.get(config));
    return out;
}

std::string config_fingerprint(const ExperimentConfig& config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const auto mix = [&h](std::string_view s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto& [k, v] : config_entries(config)) {
        mix(k);
        mix("=");
        mix(v);
        mix("\n");
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    std::map<std::string, std::string> entries;
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument("manifest " + path.string() + ": " + e.what());
        }
        if (!j.contains("config") || !j["config"].is_object()) {
            throw std::invalid_argument("manifest " + path.string() + " has no 'config' object");
        }
        for (const auto& [k, v] : j["config"].items()) entries[k] = v.get<std::string>();
    } else {
        try {
            entries = parse_key_values(text);
        } catch (const std::exception& e) {
            throw std::invalid_argument(path.string() + ": " + e.what());
        }
    }
    apply_entries(base, entries);
    return base;
}

void write_manifest(const std::filesystem::path& path, const ExperimentConfig& config, unsigned workers,
                    const std::string& config_source) {
    nlohmann::ordered_json j;
    j["tool"] = "stdf";
    j["version"] = kToolVersion;
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
    j["timestamp"] = stamp;
    j["config_source"] = config_source;
    j["seed"] = config.seed;
    j["workers"] = workers;
    j["fingerprint"] = config_fingerprint(config);
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config_entries(config)) cfg[k] = v;
    j["config"] = cfg;

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing manifest " + path.string());
}

}  // namespace stdf
