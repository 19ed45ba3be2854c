#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kernmink/feature_map.hpp"
#include "kernmink/kernels.hpp"
#include "kernmink/matrix.hpp"
#include "kernmink/minkowski.hpp"

namespace kernmink {

enum class InitMethod { RandomPoints, WarmStartP2, WarmStartP1, Provided };

std::string to_string(InitMethod init);
InitMethod init_method_from_string(const std::string& name);

struct RunConfig {
    int k = 2;
    Exponent p{2.0};
    int max_iter = 200;
    double tol = kCenterTol; // inner center-solver tolerance
    std::uint64_t seed = 0;
    InitMethod init = InitMethod::RandomPoints;
    int restarts = 1;
    std::optional<Matrix> provided_centers;

    /// Random points for p = 2, warm start from a converged p = 2 run
    /// otherwise.
    static InitMethod default_init_for(Exponent p);

    void validate(std::size_t n_points) const;
};

struct ClusterModel {
    Matrix centers; // empty for the exact kernel engine (centers stay implicit)
    std::optional<WeightMatrix> weights; // nullopt = uniform
    std::vector<int> assignments;
    Exponent p{2.0};
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
    long center_solver_iterations = 0;
    std::vector<double> objective_trace; // objective after each full iteration

    std::vector<std::size_t> cluster_sizes(std::size_t k) const;
};

/// Nearest-center assignment under the (weighted) p-power distance.
/// Ties break toward the lowest cluster index.
std::vector<int> assign(const Matrix& points, const Matrix& centers, const WeightMatrix* weights,
                        Exponent p);

/// The clustering objective for the given state: sum_i sum_l
/// w_{a_i,l}^p |x_il - m_{a_i,l}|^p, with uniform weights dropped from the
/// formula when `weights` is null.
double objective_value(const Matrix& points, std::span<const int> assignments,
                       const Matrix& centers, const WeightMatrix* weights, Exponent p);

/// Closed-form minimizing weight update: w_kl proportional to
/// V_kl^(-1/(p-1)) from the within-cluster dispersions
/// V_kl = sum_{i in C_k} |x_il - m_kl|^p. At p <= 1 the exponent is
/// singular and the limit puts all mass on the minimal-dispersion
/// feature(s). Zero dispersions are floored at 1e-12 * (1 + row mean).
WeightMatrix update_weights(const Matrix& points, std::span<const int> assignments,
                            const Matrix& centers, Exponent p);

/// Converged unweighted p = 2 centers, used to seed runs at other
/// exponents.
Matrix warm_start(const Matrix& points, int k, std::uint64_t seed, int max_iter = 200);

/// Core engine: (weighted) Minkowski K-means on the rows of `points`.
/// Runs cfg.restarts seeded restarts and returns the best model by
/// objective.
ClusterModel minkowski_weighted_kmeans(const Matrix& points, const RunConfig& cfg, bool weighted);

/// Classic Lloyd K-means (p = 2, uniform weights) on the raw data.
ClusterModel lloyd_kmeans(const Dataset& data, const RunConfig& cfg);

/// Kernel K-means through the Gram-matrix expansion of the feature-space
/// distance; the comparison baseline. Requires p = 2; materializes the
/// N x N Gram matrix, so desk-scale inputs only.
ClusterModel exact_kernel_kmeans(const Dataset& data, const KernelSpec& spec,
                                 const RunConfig& cfg);

/// The full pipeline: explicit feature map, then (weighted) Minkowski
/// K-means in the mapped space.
ClusterModel explicit_kmwk_means(const Dataset& data, const KernelSpec& spec,
                                 const MapConfig& map_cfg, const RunConfig& cfg, bool weighted);

} // namespace kernmink
