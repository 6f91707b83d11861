#include "stdf/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "stdf/experiment_config.hpp"

namespace stdf {

namespace {

std::string normalized(std::string_view s) {
    std::string out(s);
    std::replace(out.begin(), out.end(), '_', '-');
    return out;
}

bool is_aggregated(RhoMethod m) { return m == RhoMethod::fougeres_agg || m == RhoMethod::penalized_agg; }

}  // namespace

std::string_view to_string(StdfMethod m) {
    switch (m) {
        case StdfMethod::empirical: return "empirical";
        case StdfMethod::dot: return "dot";
        case StdfMethod::dot_aggregated: return "dot-aggregated";
        case StdfMethod::beirlant: return "beirlant";
    }
    return "?";
}

std::string_view to_string(RhoMethod m) {
    switch (m) {
        case RhoMethod::none: return "none";
        case RhoMethod::fougeres_pointwise: return "fougeres";
        case RhoMethod::fougeres_agg: return "fougeres-agg";
        case RhoMethod::beirlant_pointwise: return "beirlant";
        case RhoMethod::goegebeur_pointwise: return "goegebeur";
        case RhoMethod::penalized_agg: return "penalized-agg";
    }
    return "?";
}

StdfMethod parse_stdf_method(std::string_view s) {
    const auto n = normalized(s);
    for (auto m : {StdfMethod::empirical, StdfMethod::dot, StdfMethod::dot_aggregated, StdfMethod::beirlant}) {
        if (n == to_string(m)) return m;
    }
    throw std::invalid_argument("unknown stdf method '" + std::string(s) +
                                "'; valid: empirical, dot, dot-aggregated, beirlant");
}

RhoMethod parse_rho_method(std::string_view s) {
    const auto n = normalized(s);
    for (auto m : {RhoMethod::none, RhoMethod::fougeres_pointwise, RhoMethod::fougeres_agg,
                   RhoMethod::beirlant_pointwise, RhoMethod::goegebeur_pointwise, RhoMethod::penalized_agg}) {
        if (n == to_string(m)) return m;
    }
    throw std::invalid_argument("unknown rho method '" + std::string(s) +
                                "'; valid: none, fougeres, fougeres-agg, beirlant, goegebeur, penalized-agg");
}

EstimatorTuning EstimatorTuning::defaults() {
    EstimatorTuning t;
    for (int k = 1; k <= 951; k += 50) t.kset.push_back(k);
    t.fougeres_agg_points = default_rho_points();
    t.penalized = PenalizedRhoConfig::defaults();
    return t;
}

void EstimatorSpec::validate() const {
    if (id.empty()) throw std::invalid_argument("estimator id must not be empty");
    if ((stdf == StdfMethod::empirical) != (rho == RhoMethod::none)) {
        throw std::invalid_argument("estimator '" + id + "': the empirical estimator, and only it, takes no rho");
    }
    if (!(tuning.dot_a > 0.0 && tuning.dot_a < 1.0)) throw std::invalid_argument("dot estimator needs a in (0, 1)");
    if (stdf == StdfMethod::dot_aggregated && tuning.kset.empty()) {
        throw std::invalid_argument("aggregated dot estimator needs a nonempty k set");
    }
    if (stdf == StdfMethod::beirlant && tuning.beirlant.kbar < 2) {
        throw std::invalid_argument("beirlant estimator needs kbar >= 2");
    }
    switch (rho) {
        case RhoMethod::none: break;
        case RhoMethod::fougeres_agg:
            if (tuning.fougeres_agg_points.empty()) throw std::invalid_argument("aggregated rho needs points");
            [[fallthrough]];
        case RhoMethod::fougeres_pointwise:
        case RhoMethod::beirlant_pointwise:
        case RhoMethod::goegebeur_pointwise:
            tuning.ratio.validate();
            break;
        case RhoMethod::penalized_agg:
            tuning.penalized.validate();
            break;
    }
}

std::vector<EstimatorSpec> table_estimators() {
    const auto row = [](std::string id, StdfMethod s, RhoMethod r) {
        EstimatorSpec e;
        e.id = std::move(id);
        e.stdf = s;
        e.rho = r;
        return e;
    };
    return {
        row("empirical", StdfMethod::empirical, RhoMethod::none),
        row("dot-fougeres", StdfMethod::dot, RhoMethod::fougeres_pointwise),
        row("dot-fougeres-agg", StdfMethod::dot, RhoMethod::fougeres_agg),
        row("dotagg-fougeres-agg", StdfMethod::dot_aggregated, RhoMethod::fougeres_agg),
        row("dotagg-penalized", StdfMethod::dot_aggregated, RhoMethod::penalized_agg),
        row("beirlant-beirlant", StdfMethod::beirlant, RhoMethod::beirlant_pointwise),
        row("beirlant-goegebeur", StdfMethod::beirlant, RhoMethod::goegebeur_pointwise),
        row("beirlant-penalized", StdfMethod::beirlant, RhoMethod::penalized_agg),
    };
}

EstimatorSpec estimator_from_id(std::string_view id) {
    for (auto& e : table_estimators()) {
        if (e.id == id) return e;
    }
    const auto colon = id.find(':');
    if (colon == std::string_view::npos) {
        std::string msg = "unknown estimator '" + std::string(id) + "'; valid ids:";
        for (const auto& e : table_estimators()) msg += " " + e.id;
        msg += ", or <stdf>:<rho>";
        throw std::invalid_argument(msg);
    }
    EstimatorSpec e;
    e.id = std::string(id);
    e.stdf = parse_stdf_method(id.substr(0, colon));
    e.rho = parse_rho_method(id.substr(colon + 1));
    e.validate();
    return e;
}

EstimationContext::EstimationContext(const RankMatrix& ranks)
    : ranks_(ranks), level_fn_(make_level_function(ranks, ThresholdPolicy::saturate)) {}

double EstimationContext::rho(const EstimatorSpec& spec, const Point& x) {
    const Key key{spec.id, 0.0, 0.0, is_aggregated(spec.rho) ? Point{} : x};
    if (auto it = rho_cache_.find(key); it != rho_cache_.end()) return it->second;
    const auto& t = spec.tuning;
    double value = 0.0;
    switch (spec.rho) {
        case RhoMethod::none:
            throw std::logic_error("estimator '" + spec.id + "' has no rho estimator");
        case RhoMethod::fougeres_pointwise:
            value = rho_fougeres(level_fn_, t.ratio, x);
            break;
        case RhoMethod::fougeres_agg:
            value = rho_fougeres_agg(level_fn_, t.ratio, t.fougeres_agg_points).value;
            break;
        case RhoMethod::beirlant_pointwise:
            value = rho_beirlant(level_fn_, t.ratio, t.beirlant_rho_tau, x);
            break;
        case RhoMethod::goegebeur_pointwise:
            value = rho_goegebeur(level_fn_, t.ratio, t.goegebeur_tau, t.goegebeur_xi1, t.goegebeur_xi2, x);
            break;
        case RhoMethod::penalized_agg:
            value = rho_penalized_agg(level_fn_, t.penalized).value;
            break;
    }
    rho_cache_.emplace(key, value);
    return value;
}

double EstimationContext::smoothed(int k, double tau, const Point& x) {
    const Key key{{}, static_cast<double>(k), tau, x};
    if (auto it = smoothed_cache_.find(key); it != smoothed_cache_.end()) return it->second;
    const double v = kernel_smoothed_stdf(level_fn_, k, tau, x);
    smoothed_cache_.emplace(key, v);
    return v;
}

double EstimationContext::alpha(int kbar, double tau_b, double rho, const Point& x) {
    auto key = std::make_tuple(kbar, x);
    auto it = alpha_values_.find(key);
    if (it == alpha_values_.end()) {
        const auto a = kernel_design(kbar);
        std::vector<double> values(a.size());
        for (std::size_t j = 0; j < a.size(); ++j) values[j] = level_fn_(kbar * a[j], x);
        it = alpha_values_.emplace(std::move(key), std::move(values)).first;
    }
    return beirlant_alpha_from_values(it->second, tau_b, rho);
}

double EstimationContext::dot_aggregated(const EstimatorSpec& spec, double rho, const Point& x) {
    const Key key{spec.id, rho, 0.0, x};
    if (auto it = dot_agg_cache_.find(key); it != dot_agg_cache_.end()) return it->second;
    const double v = dot_aggregated_stdf(level_fn_, spec.tuning.kset, spec.tuning.dot_a, rho, x);
    dot_agg_cache_.emplace(key, v);
    return v;
}

double evaluate_estimator(const EstimatorSpec& spec, EstimationContext& ctx, int k, const Point& x) {
    const auto& t = spec.tuning;
    switch (spec.stdf) {
        case StdfMethod::empirical:
            return empirical_stdf(ctx.ranks(), k, x, ThresholdPolicy::strict);
        case StdfMethod::dot:
            return dot_stdf(ctx.level_function(), k, t.dot_a, ctx.rho(spec, x), x);
        case StdfMethod::dot_aggregated:
            return ctx.dot_aggregated(spec, ctx.rho(spec, x), x);
        case StdfMethod::beirlant: {
            const double rho = ctx.rho(spec, x);
            const double smoothed = ctx.smoothed(k, t.beirlant.tau, x);
            const double alpha = ctx.alpha(t.beirlant.kbar, t.beirlant.tau_b, rho, x);
            return beirlant_stdf_from_parts(x, smoothed, alpha, k, t.beirlant.kbar, t.beirlant.tau, rho);
        }
    }
    throw std::logic_error("unhandled stdf method");
}

double evaluate_estimator(const EstimatorSpec& spec, const RankMatrix& ranks, int k, const Point& x) {
    EstimationContext ctx(ranks);
    return evaluate_estimator(spec, ctx, k, x);
}

ExperimentConfig ExperimentConfig::defaults(DgpSpec dgp) {
    ExperimentConfig c;
    c.dgp = std::move(dgp);
    for (int k = 1; k <= 951; k += 50) c.k_grid.push_back(k);
    for (int i = 1; i <= 10; ++i) c.eval_points.push_back(Point{i / 10.0, (10 - i) / 10.0});
    c.estimators = table_estimators();
    return c;
}

void ExperimentConfig::validate() const {
    dgp.validate();
    if (n < 1) throw std::invalid_argument("experiment: n must be positive");
    if (reps < 1) throw std::invalid_argument("experiment: reps must be positive");
    if (k_grid.empty()) throw std::invalid_argument("experiment: empty k grid");
    for (int k : k_grid) {
        if (k < 1) throw std::invalid_argument("experiment: k values must be positive");
    }
    if (eval_points.empty()) throw std::invalid_argument("experiment: no evaluation points");
    for (const auto& x : eval_points) {
        if (x.dim() != 2) throw std::invalid_argument("experiment: evaluation points must be bivariate");
    }
    std::set<std::string> ids;
    for (const auto& e : estimators) {
        e.validate();
        if (!ids.insert(e.id).second) throw std::invalid_argument("experiment: duplicate estimator id " + e.id);
    }
}

ReplicationSummary summarize_replications(std::span<const std::optional<std::vector<double>>> per_rep,
                                          std::span<const double> truth) {
    ReplicationSummary out;
    std::vector<const std::vector<double>*> used;
    for (const auto& r : per_rep) {
        if (!r) {
            ++out.failures;
            continue;
        }
        if (r->size() != truth.size()) throw std::invalid_argument("replication size does not match truth");
        used.push_back(&*r);
    }
    out.reps = used.size();
    if (used.empty() || truth.empty()) return out;

    const double inv_n = 1.0 / static_cast<double>(used.size());
    for (std::size_t p = 0; p < truth.size(); ++p) {
        double mean = 0.0;
        for (const auto* r : used) mean += (*r)[p];
        mean *= inv_n;
        double var = 0.0;
        double mse = 0.0;
        for (const auto* r : used) {
            const double dev = (*r)[p] - mean;
            const double err = (*r)[p] - truth[p];
            var += dev * dev;
            mse += err * err;
        }
        const double bias = mean - truth[p];
        out.squared_bias += bias * bias;
        out.variance += var * inv_n;
        out.mse += mse * inv_n;
    }
    const double inv_p = 1.0 / static_cast<double>(truth.size());
    out.squared_bias *= inv_p;
    out.variance *= inv_p;
    out.mse *= inv_p;
    return out;
}

MetricsTable run_experiment(const ExperimentConfig& config, unsigned workers, const EstimatorEvaluator& evaluator) {
    config.validate();
    const EstimatorEvaluator eval = evaluator ? evaluator : EstimatorEvaluator(
        [](const EstimatorSpec& s, EstimationContext& c, int k, const Point& x) {
            return evaluate_estimator(s, c, k, x);
        });

    const std::size_t n_est = config.estimators.size();
    const std::size_t n_k = config.k_grid.size();
    const std::size_t n_x = config.eval_points.size();
    const std::size_t block = n_est * n_k * n_x;
    // results[rep][(e * n_k + k) * n_x + x]; NaN marks a failed (estimator, k)
    std::vector<std::vector<double>> results(config.reps);
    const std::uint32_t stream_dgp = dgp_index(config.dgp.name);

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    const auto work = [&] {
        for (;;) {
            const std::size_t rep = next.fetch_add(1);
            if (rep >= config.reps) return;
            try {
                const RngStream stream{config.seed, stream_dgp, rep};
                const RankMatrix ranks = compute_ranks(sample_dgp(config.dgp, config.n, stream));
                EstimationContext ctx(ranks);
                std::vector<double> out(block);
                for (std::size_t e = 0; e < n_est; ++e) {
                    for (std::size_t ki = 0; ki < n_k; ++ki) {
                        double* cell = &out[(e * n_k + ki) * n_x];
                        try {
                            for (std::size_t p = 0; p < n_x; ++p) {
                                const double v =
                                    eval(config.estimators[e], ctx, config.k_grid[ki], config.eval_points[p]);
                                if (!std::isfinite(v)) throw std::runtime_error("non-finite estimate");
                                cell[p] = v;
                            }
                        } catch (const std::exception&) {
                            std::fill(cell, cell + n_x, std::nan(""));
                        }
                    }
                }
                results[rep] = std::move(out);
            } catch (...) {
                const std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(config.reps);
                return;
            }
        }
    };

    const unsigned n_threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(config.reps)));
    if (n_threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(work);
    }
    if (error) std::rethrow_exception(error);

    std::vector<double> truth(n_x);
    for (std::size_t p = 0; p < n_x; ++p) truth[p] = true_stdf(config.dgp, config.eval_points[p]);

    MetricsTable table;
    table.fingerprint = config_fingerprint(config);
    std::vector<std::optional<std::vector<double>>> per_rep(config.reps);
    for (std::size_t e = 0; e < n_est; ++e) {
        for (std::size_t ki = 0; ki < n_k; ++ki) {
            for (std::size_t rep = 0; rep < config.reps; ++rep) {
                const double* cell = &results[rep][(e * n_k + ki) * n_x];
                if (std::isnan(cell[0])) {
                    per_rep[rep].reset();
                } else {
                    per_rep[rep] = std::vector<double>(cell, cell + n_x);
                }
            }
            const auto s = summarize_replications(per_rep, truth);
            if (static_cast<double>(s.failures) > 0.01 * static_cast<double>(config.reps)) {
                throw std::runtime_error("estimator '" + config.estimators[e].id + "' failed in " +
                                         std::to_string(s.failures) + " of " + std::to_string(config.reps) +
                                         " replications at k=" + std::to_string(config.k_grid[ki]));
            }
            table.rows.push_back({config.dgp.name, config.estimators[e].id, config.k_grid[ki], s.squared_bias,
                                  s.variance, s.mse, s.reps, s.failures});
        }
    }
    std::sort(table.rows.begin(), table.rows.end(), [](const MetricsRow& a, const MetricsRow& b) {
        return std::tie(a.estimator, a.k) < std::tie(b.estimator, b.k);
    });
    return table;
}

}  // namespace stdf
