#include "kernmink/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kernmink {

namespace {

void check_same_size(std::size_t a, std::size_t b, const char* who) {
    if (a != b)
        throw std::invalid_argument(std::string(who) + ": dimension mismatch (" +
                                    std::to_string(a) + " vs " + std::to_string(b) + ")");
}

double objective_1d(std::span<const double> vals, double m, double p) {
    double s = 0.0;
    for (double v : vals) s += pow_abs(m - v, p);
    return s;
}

// Subgradient convention: a zero deviation contributes nothing (needed for
// p < 2, where |.|^(p-1) has a kink or pole at zero).
double gradient_1d(std::span<const double> vals, double m, double p) {
    double s = 0.0;
    for (double v : vals) {
        const double d = m - v;
        if (d > 0.0)
            s += std::pow(d, p - 1.0);
        else if (d < 0.0)
            s -= std::pow(-d, p - 1.0);
    }
    return p * s;
}

double median_1d(std::vector<double> vals) {
    std::sort(vals.begin(), vals.end());
    const std::size_t n = vals.size();
    if (n % 2 == 1) return vals[n / 2];
    return 0.5 * (vals[n / 2 - 1] + vals[n / 2]);
}

// Steepest descent with a halving line search; valid for convex p > 1.
// Stops when the step length t*|g| drops below tol or after max_iter
// iterations.
double descend_1d(std::span<const double> vals, double p, double m0, double tol, int max_iter,
                  long* iterations) {
    double lo = vals[0], hi = vals[0];
    for (double v : vals) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo == hi) return lo;

    double m = std::clamp(m0, lo, hi);
    double fm = objective_1d(vals, m, p);
    double g = gradient_1d(vals, m, p);
    if (g == 0.0) return m;
    double t = 0.25 * (hi - lo) / std::abs(g);

    for (int it = 0; it < max_iter; ++it) {
        g = gradient_1d(vals, m, p);
        if (g == 0.0) break;
        bool moved = false;
        while (t * std::abs(g) >= tol) {
            const double cand = std::clamp(m - t * g, lo, hi);
            const double fc = objective_1d(vals, cand, p);
            if (fc < fm) {
                m = cand;
                fm = fc;
                t *= 2.0;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if (iterations) ++*iterations;
        if (!moved) break;
    }
    return m;
}

double golden_section_1d(std::span<const double> vals, double p, double lo, double hi) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = objective_1d(vals, c, p);
    double fd = objective_1d(vals, d, p);
    for (int it = 0; it < 100 && (b - a) > 1e-12 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = objective_1d(vals, c, p);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = objective_1d(vals, d, p);
        }
    }
    return fc < fd ? c : d;
}

// For 0 < p < 1 the per-dimension objective is concave between consecutive
// data coordinates, so the global minimizer sits at one of them. Evaluate
// every distinct coordinate, then refine around the best with a
// golden-section pass over the neighboring bracket and keep the better of
// the two.
double fractional_center_1d(std::span<const double> vals, double p) {
    std::vector<double> cands(vals.begin(), vals.end());
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    std::size_t best = 0;
    double best_f = objective_1d(vals, cands[0], p);
    for (std::size_t i = 1; i < cands.size(); ++i) {
        const double f = objective_1d(vals, cands[i], p);
        if (f < best_f) {
            best = i;
            best_f = f;
        }
    }
    if (cands.size() == 1) return cands[0];

    const double lo = best > 0 ? cands[best - 1] : cands[best];
    const double hi = best + 1 < cands.size() ? cands[best + 1] : cands[best];
    const double refined = golden_section_1d(vals, p, lo, hi);
    return objective_1d(vals, refined, p) < best_f ? refined : cands[best];
}

} // namespace

Exponent::Exponent(double p) : p_(p) {
    if (!(p > 0.0) || !std::isfinite(p))
        throw std::invalid_argument("Exponent: p must be finite and > 0");
}

WeightMatrix WeightMatrix::uniform(std::size_t k, std::size_t dims) {
    WeightMatrix wm;
    wm.w = Matrix(k, dims, dims > 0 ? 1.0 / static_cast<double>(dims) : 0.0);
    return wm;
}

void WeightMatrix::validate() const {
    for (std::size_t k = 0; k < w.rows(); ++k) {
        double sum = 0.0;
        for (std::size_t l = 0; l < w.cols(); ++l) {
            if (w(k, l) < 0.0)
                throw std::invalid_argument("WeightMatrix: negative weight at row " +
                                            std::to_string(k));
            sum += w(k, l);
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("WeightMatrix: row " + std::to_string(k) +
                                        " sums to " + std::to_string(sum) + ", expected 1");
    }
}

double pow_abs(double d, double p) {
    const double a = std::abs(d);
    if (p == 2.0) return a * a;
    if (p == 1.0) return a;
    if (a == 0.0) return 0.0;
    return std::pow(a, p);
}

double minkowski_pow_dist(std::span<const double> x, std::span<const double> y, Exponent p) {
    check_same_size(x.size(), y.size(), "minkowski_pow_dist");
    const double pv = p.value();
    double s = 0.0;
    for (std::size_t l = 0; l < x.size(); ++l) s += pow_abs(x[l] - y[l], pv);
    return s;
}

double weighted_pow_dist(std::span<const double> x, std::span<const double> y,
                         std::span<const double> w_row, Exponent p) {
    check_same_size(x.size(), y.size(), "weighted_pow_dist");
    check_same_size(x.size(), w_row.size(), "weighted_pow_dist");
    const double pv = p.value();
    double s = 0.0;
    for (std::size_t l = 0; l < x.size(); ++l) {
        if (w_row[l] < 0.0) throw std::invalid_argument("weighted_pow_dist: negative weight");
        s += pow_abs(w_row[l], pv) * pow_abs(x[l] - y[l], pv);
    }
    return s;
}

double center_objective(const Matrix& points, std::span<const double> m, Exponent p) {
    check_same_size(points.cols(), m.size(), "center_objective");
    const double pv = p.value();
    double s = 0.0;
    for (std::size_t i = 0; i < points.rows(); ++i) {
        const auto row = points.row(i);
        for (std::size_t l = 0; l < m.size(); ++l) s += pow_abs(row[l] - m[l], pv);
    }
    return s;
}

std::vector<double> minkowski_center(const Matrix& points, Exponent p,
                                     std::optional<std::span<const double>> init, double tol,
                                     int max_iter, long* solver_iterations) {
    if (points.rows() == 0) throw std::invalid_argument("minkowski_center: empty point set");
    if (!(tol > 0.0)) throw std::invalid_argument("minkowski_center: tol must be > 0");
    if (init && init->size() != points.cols())
        throw std::invalid_argument("minkowski_center: init has wrong dimension");

    const std::size_t n = points.rows();
    const std::size_t d = points.cols();
    const double pv = p.value();
    std::vector<double> center(d, 0.0);
    std::vector<double> col(n);

    for (std::size_t l = 0; l < d; ++l) {
        for (std::size_t i = 0; i < n; ++i) col[i] = points(i, l);

        if (pv == 2.0) {
            double s = 0.0;
            for (double v : col) s += v;
            center[l] = s / static_cast<double>(n);
        } else if (pv == 1.0) {
            center[l] = median_1d(col);
        } else if (pv > 1.0) {
            double mean = 0.0;
            for (double v : col) mean += v;
            mean /= static_cast<double>(n);
            const double median = median_1d(col);
            const double start = init ? (*init)[l] : median;
            double m = descend_1d(col, pv, start, tol, max_iter, solver_iterations);
            double fm = objective_1d(col, m, pv);
            // never trail the closed-form candidates
            for (double cand : {median, mean}) {
                const double fc = objective_1d(col, cand, pv);
                if (fc < fm) {
                    m = cand;
                    fm = fc;
                }
            }
            center[l] = m;
        } else {
            center[l] = fractional_center_1d(col, pv);
        }
    }
    return center;
}

} // namespace kernmink
