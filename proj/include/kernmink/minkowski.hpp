#pragma once

#include <optional>
#include <span>
#include <vector>

#include "kernmink/matrix.hpp"

namespace kernmink {

/// Minkowski exponent p > 0. Values below 1 select fractional prenorms,
/// which do not satisfy the triangle inequality.
class Exponent {
public:
    explicit Exponent(double p);
    double value() const { return p_; }
    bool fractional() const { return p_ < 1.0; }
    bool operator==(const Exponent&) const = default;

private:
    double p_;
};

/// Per-cluster, per-feature relevance weights; every row sums to one.
struct WeightMatrix {
    Matrix w;

    static WeightMatrix uniform(std::size_t k, std::size_t dims);
    void validate() const;
};

inline constexpr double kCenterTol = 1e-8;
inline constexpr int kCenterMaxIter = 200;

/// |d|^p with fast paths for p = 1 and p = 2.
double pow_abs(double d, double p);

/// sum_l |x_l - y_l|^p (the p-th power form used inside the objectives).
double minkowski_pow_dist(std::span<const double> x, std::span<const double> y, Exponent p);

/// sum_l w_l^p |x_l - y_l|^p.
double weighted_pow_dist(std::span<const double> x, std::span<const double> y,
                         std::span<const double> w_row, Exponent p);

/// sum_i sum_l |points(i, l) - m_l|^p.
double center_objective(const Matrix& points, std::span<const double> m, Exponent p);

/// Per-dimension minimizer of center_objective over the rows of `points`:
/// the mean at p = 2, the component-wise median at p = 1, steepest descent
/// with backtracking for p > 1 (seeded by `init` when given, the median
/// otherwise), and a candidate-plus-refine search over the data
/// coordinates for 0 < p < 1. `solver_iterations`, when non-null,
/// accumulates descent iteration counts.
std::vector<double> minkowski_center(const Matrix& points, Exponent p,
                                     std::optional<std::span<const double>> init = std::nullopt,
                                     double tol = kCenterTol, int max_iter = kCenterMaxIter,
                                     long* solver_iterations = nullptr);

} // namespace kernmink
