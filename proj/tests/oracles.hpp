#pragma once

// Test-only oracles, kept independent of the library code paths they check:
// quadrature for spectra, brute-force grids for center solves, naive
// contingency metrics, and a naive objective re-summation.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <span>
#include <vector>

#include "kernmink/matrix.hpp"

namespace oracles {

// Inverse Fourier transform of an even signature by composite Simpson on
// the half line: rho(omega) = (1/pi) * int_0^W cos(omega l) kappa(l) dl.
inline double spectrum_quadrature(const std::function<double(double)>& kappa, double omega,
                                  double window = 60.0, int intervals = 24000) {
    if (intervals % 2 != 0) ++intervals;
    const double h = window / intervals;
    auto f = [&](double l) { return std::cos(omega * l) * kappa(l); };
    double sum = f(0.0) + f(window);
    for (int i = 1; i < intervals; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return sum * h / 3.0 / std::numbers::pi;
}

// Brute-force 1-D center oracle: minimum of sum_i |m - v_i|^p over a grid.
struct GridMinimum {
    double location = 0.0;
    double objective = 0.0;
};

inline GridMinimum grid_center_1d(std::span<const double> vals, double p, double lo, double hi,
                                  double step) {
    auto objective = [&](double m) {
        double s = 0.0;
        for (double v : vals) s += std::pow(std::abs(m - v), p);
        return s;
    };
    GridMinimum best{lo, objective(lo)};
    const long steps = static_cast<long>((hi - lo) / step);
    for (long i = 1; i <= steps; ++i) {
        const double m = lo + i * step;
        const double f = objective(m);
        if (f < best.objective) best = {m, f};
    }
    return best;
}

// Naive NMI: direct contingency counting, arithmetic-mean normalization,
// natural logs. Written independently of the library implementation.
inline double naive_nmi(std::span<const int> a, std::span<const int> b) {
    const double n = static_cast<double>(a.size());
    std::map<int, double> ca, cb;
    std::map<std::pair<int, int>, double> cab;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ca[a[i]] += 1.0;
        cb[b[i]] += 1.0;
        cab[{a[i], b[i]}] += 1.0;
    }
    double ha = 0.0, hb = 0.0, mi = 0.0;
    for (auto& [k, v] : ca) ha -= v / n * std::log(v / n);
    for (auto& [k, v] : cb) hb -= v / n * std::log(v / n);
    for (auto& [kv, v] : cab) mi += v / n * std::log((v * n) / (ca[kv.first] * cb[kv.second]));
    if (ha + hb <= 0.0) return 1.0;
    return std::clamp(mi / (0.5 * (ha + hb)), 0.0, 1.0);
}

inline double naive_purity(std::span<const int> labels, std::span<const int> assignments) {
    std::map<int, std::map<int, long>> clusters;
    for (std::size_t i = 0; i < labels.size(); ++i) ++clusters[assignments[i]][labels[i]];
    long correct = 0;
    for (auto& [cl, hist] : clusters) {
        long best = 0;
        for (auto& [lab, cnt] : hist) best = std::max(best, cnt);
        correct += best;
    }
    return static_cast<double>(correct) / static_cast<double>(labels.size());
}

// Naive triple-loop objective re-summation.
inline double naive_objective(const kernmink::Matrix& points, std::span<const int> assignments,
                              const kernmink::Matrix& centers,
                              const kernmink::Matrix* weights, double p) {
    double obj = 0.0;
    for (std::size_t i = 0; i < points.rows(); ++i) {
        const int c = assignments[i];
        for (std::size_t l = 0; l < points.cols(); ++l) {
            double term = std::pow(std::abs(points(i, l) - centers(c, l)), p);
            if (weights) term *= std::pow((*weights)(c, l), p);
            obj += term;
        }
    }
    return obj;
}

} // namespace oracles
