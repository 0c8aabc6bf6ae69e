#pragma once

#include <string>
#include <vector>

#include "ppursuit/pursuit.hpp"
#include "ppursuit/skewt.hpp"

namespace ppursuit {

/// What the contamination step overwrites with N(25, 1) draws.
enum class ContamTarget {
    none,
    latent_and_y,  ///< first floor(n*phi/2) of y and last floor(n*phi/2) of t
    x_columns,     ///< first floor(n*phi/2) of column 1, last of column 2
};

/// One cell of the recovery study: a latent factor t and dependent series y
/// are drawn jointly skew-t, the observed panel is X = t p^T + noise, and a
/// 1-component fit with the composite index (weights [1, 0.5, 0.5] on the
/// second/third-order terms, scaled, trimmed per `trim_alpha`) is scored on
/// how well it recovers the factor.
struct SimSetting {
    double sigma_eps = 0.001;  ///< sd of the additive noise on X
    double nu = 50.0;          ///< skew-t degrees of freedom
    double phi = 0.0;          ///< contamination fraction, 0 or 0.1
    double omega_offdiag = 0.0;
    ContamTarget contam = ContamTarget::none;
    int n = 1000;
    std::vector<double> loadings = {1.0, 2.0, 0.5, 0.003, 1.5};
    double trim_alpha = 0.0;
    int n_runs = 100;
};

/// Replicate statistics of the two recovery metrics. Location/spread pairs
/// are mean/sd and median/mad (mad unscaled); sd is 0 for a single run.
struct SimSummary {
    SimSetting setting;
    double mean_ad = 0, sd_ad = 0, median_ad = 0, mad_ad = 0;
    double mean_pr = 0, sd_pr = 0, median_pr = 0, mad_pr = 0;
    int n_failures = 0;
};

/// Observed panel X = t p^T + sigma_eps * N(0, 1), noise drawn row-major.
Eigen::MatrixXd generate_latent_data(std::span<const double> t,
                                     std::span<const double> loadings,
                                     double sigma_eps,
                                     std::uint64_t seed);

/// Overwrites the targeted stretches with N(25, 1) draws (y first, then t,
/// or column 1 then column 2). phi must be 0 or 0.1; target none requires
/// phi = 0. X may be empty when the target does not touch it.
void contaminate(std::vector<double>& y,
                 std::vector<double>& t,
                 Eigen::MatrixXd& X,
                 double phi,
                 ContamTarget target,
                 std::uint64_t seed);

/// Absolute gap between the scaled (2,1) co-moment of (y, t_hat) and of
/// (y, t_true): how far the fitted score's third-order relation to y sits
/// from the latent factor's.
double metric_ad(std::span<const double> y,
                 std::span<const double> t_hat,
                 std::span<const double> t_true);

/// |p_hat[3] / p_hat[1]| from the first component's loadings: the spurious
/// weight on the near-null column relative to the dominant one. Throws when
/// the reference loading is numerically zero.
double metric_pr(const PursuitModel& model);

/// Runs n_runs independent replicates (parallelised, deterministic in the
/// master seed) and aggregates both metrics. Replicates whose fit throws
/// are counted in n_failures and excluded from the statistics.
SimSummary run_simulation(const SimSetting& setting, std::uint64_t seed);

/// CSV header/row for a batch of summaries; doubles at full precision.
std::string summary_csv_header();
std::string summary_csv_row(const SimSummary& summary);

std::string to_string(ContamTarget target);
ContamTarget contam_target_from_string(std::string_view name);

}  // namespace ppursuit
