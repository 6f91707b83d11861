#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "stdf/bias_corrected.hpp"
#include "stdf/dgp.hpp"
#include "stdf/penalized_rho.hpp"
#include "stdf/ratio_rho.hpp"

namespace stdf {

enum class StdfMethod { empirical, dot, dot_aggregated, beirlant };

enum class RhoMethod {
    none,
    fougeres_pointwise,
    fougeres_agg,
    beirlant_pointwise,
    goegebeur_pointwise,
    penalized_agg,
};

std::string_view to_string(StdfMethod m);
std::string_view to_string(RhoMethod m);
/// Accepts the names produced by to_string, with '-' or '_' separators.
StdfMethod parse_stdf_method(std::string_view s);
RhoMethod parse_rho_method(std::string_view s);

/// Every tuning parameter any estimator in the catalogue may need.
struct EstimatorTuning {
    double dot_a = 0.4;
    std::vector<int> kset;  ///< k set of the aggregated dot estimator
    BeirlantTuning beirlant;
    RatioRhoConfig ratio;
    double beirlant_rho_tau = 5.0;
    double goegebeur_tau = 10.0;
    double goegebeur_xi1 = 4.0;
    double goegebeur_xi2 = 4.0;
    std::vector<Point> fougeres_agg_points;
    PenalizedRhoConfig penalized;

    static EstimatorTuning defaults();
};

/// One stdf estimator paired with the rho estimator that feeds it.
struct EstimatorSpec {
    std::string id;
    StdfMethod stdf = StdfMethod::empirical;
    RhoMethod rho = RhoMethod::none;
    EstimatorTuning tuning = EstimatorTuning::defaults();

    void validate() const;
};

/// The eight catalogue configurations, in plotting order: empirical,
/// dot-fougeres, dot-fougeres-agg, dotagg-fougeres-agg, dotagg-penalized,
/// beirlant-beirlant, beirlant-goegebeur, beirlant-penalized.
std::vector<EstimatorSpec> table_estimators();

/// A catalogue id, or a free combination written "<stdf>:<rho>".
EstimatorSpec estimator_from_id(std::string_view id);

/// Per-replication memo of everything shared between estimators: rho
/// estimates, kernel-smoothed values and slope inputs. Bias-corrected
/// estimators evaluate the empirical stdf with saturating thresholds since
/// their internal levels can exceed n.
class EstimationContext {
public:
    explicit EstimationContext(const RankMatrix& ranks);
    EstimationContext(const EstimationContext&) = delete;
    EstimationContext& operator=(const EstimationContext&) = delete;

    const RankMatrix& ranks() const noexcept { return ranks_; }
    const LevelFunction& level_function() const noexcept { return level_fn_; }

    /// The rho estimate spec uses at x; aggregated estimates ignore x.
    double rho(const EstimatorSpec& spec, const Point& x);
    double smoothed(int k, double tau, const Point& x);
    double alpha(int kbar, double tau_b, double rho, const Point& x);
    double dot_aggregated(const EstimatorSpec& spec, double rho, const Point& x);

private:
    using Key = std::tuple<std::string, double, double, Point>;

    const RankMatrix& ranks_;
    LevelFunction level_fn_;
    std::map<Key, double> rho_cache_;
    std::map<Key, double> smoothed_cache_;
    std::map<std::tuple<int, Point>, std::vector<double>> alpha_values_;
    std::map<Key, double> dot_agg_cache_;
};

/// The clamped stdf estimate of `spec` at (k, x).
double evaluate_estimator(const EstimatorSpec& spec, EstimationContext& ctx, int k, const Point& x);
double evaluate_estimator(const EstimatorSpec& spec, const RankMatrix& ranks, int k, const Point& x);

struct ExperimentConfig {
    DgpSpec dgp;
    std::size_t n = 1000;
    std::size_t reps = 1000;
    std::vector<int> k_grid;
    std::vector<Point> eval_points;
    std::vector<EstimatorSpec> estimators;
    std::uint64_t seed = 1;

    /// n = 1000, N = 1000, k = 1, 51, ..., 951, X = {(t, 1-t): t = 0.1..1},
    /// all eight catalogue estimators.
    static ExperimentConfig defaults(DgpSpec dgp);

    void validate() const;
};

struct MetricsRow {
    std::string dgp;
    std::string estimator;
    int k = 0;
    double squared_bias = 0.0;
    double variance = 0.0;
    double mse = 0.0;
    std::size_t reps = 0;
    std::size_t failures = 0;
};

struct MetricsTable {
    std::vector<MetricsRow> rows;
    std::string fingerprint;
};

struct ReplicationSummary {
    double squared_bias = 0.0;
    double variance = 0.0;
    double mse = 0.0;
    std::size_t reps = 0;
    std::size_t failures = 0;
};

/// Bias^2, variance (1/N convention) and MSE averaged over evaluation
/// points. per_rep[r] holds one estimate per point, or nullopt for a failed
/// replication, which is excluded and counted.
ReplicationSummary summarize_replications(std::span<const std::optional<std::vector<double>>> per_rep,
                                          std::span<const double> truth);

using EstimatorEvaluator =
    std::function<double(const EstimatorSpec& spec, EstimationContext& ctx, int k, const Point& x)>;

/// Runs config.reps seeded replications over `workers` threads. Results do
/// not depend on the worker count. Throws std::runtime_error if more than 1%
/// of replications fail for any (estimator, k).
MetricsTable run_experiment(const ExperimentConfig& config, unsigned workers = 1,
                            const EstimatorEvaluator& evaluator = {});

}  // namespace stdf
