#include "kernmink/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace kernmink {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kPi = std::numbers::pi;

// Spectrum values below this are treated as zero to keep sqrt() away from
// denormals downstream.
constexpr double kSpectrumFloor = 1e-300;

double guard_spectrum(double rho) {
    if (!(rho > kSpectrumFloor)) return 0.0;
    return rho;
}

double js_scalar(double a, double b) {
    const double s = a + b;
    if (s <= 0.0) return 0.0;
    double k = 0.0;
    if (a > 0.0) k += 0.5 * a * std::log2(s / a);
    if (b > 0.0) k += 0.5 * b * std::log2(s / b);
    return k;
}

// Power mean M_t(a, b) = ((a^t + b^t)/2)^(1/t) with the usual limits:
// max for t = +inf, min for t = -inf, and 0 when t < 0 and an argument is 0.
double power_mean(double t, double a, double b) {
    if (std::isinf(t)) return t > 0.0 ? std::max(a, b) : std::min(a, b);
    if (a == 0.0 && b == 0.0) return 0.0;
    if (t < 0.0 && (a == 0.0 || b == 0.0)) return 0.0;
    return std::pow(0.5 * (std::pow(a, t) + std::pow(b, t)), 1.0 / t);
}

// Pointwise limit of the family metric as alpha -> beta:
//   d2(a, b) = T^(1/beta - 1) / ln 2 * (A log(2A/T) + B log(2B/T))
// with A = a^beta, B = b^beta, T = A + B. At beta = 1 this is the
// Jensen-Shannon divergence scaled so that d2(a, 0) = a.
double hb_limit_d2(double beta, double a, double b) {
    if (a == 0.0 && b == 0.0) return 0.0;
    const double A = std::pow(a, beta);
    const double B = std::pow(b, beta);
    const double T = A + B;
    double bracket = 0.0;
    if (A > 0.0) bracket += A * std::log(2.0 * A / T);
    if (B > 0.0) bracket += B * std::log(2.0 * B / T);
    return std::pow(T, 1.0 / beta - 1.0) * bracket / kLn2;
}

// Squared Hein-Bousquet metric. The numerator 2^(1/a + 1/b) (M_a - M_b) is
// nonnegative for alpha >= beta by the power-mean inequality; the
// normalizer |2^(1/beta) - 2^(1/alpha)| keeps the metric nonnegative on
// both validity branches (beta in [1/2, alpha] and beta <= -1).
double hb_d2(double alpha, double beta, double a, double b) {
    if (a == b) return 0.0;
    if (std::abs(alpha - beta) <= 1e-7 * std::max(1.0, std::abs(beta)))
        return hb_limit_d2(0.5 * (alpha + beta), a, b);
    const double inv_a = std::isinf(alpha) ? 0.0 : 1.0 / alpha;
    const double inv_b = std::isinf(beta) ? 0.0 : 1.0 / beta;
    const double num =
        std::pow(2.0, inv_a + inv_b) * (power_mean(alpha, a, b) - power_mean(beta, a, b));
    const double den = std::abs(std::pow(2.0, inv_b) - std::pow(2.0, inv_a));
    return num / den;
}

double hb_scalar(double alpha, double beta, double a, double b) {
    if (a < b) std::swap(a, b); // symmetric kernel; fixes the summation order
    const double dab = hb_d2(alpha, beta, a, b);
    const double da0 = hb_d2(alpha, beta, a, 0.0);
    const double db0 = hb_d2(alpha, beta, b, 0.0);
    return 0.5 * (-dab + da0 + db0);
}

// Numeric inverse Fourier transform of the (even) signature:
//   rho(omega) = 1/(2 pi) int_{-W}^{W} cos(omega lambda) kappa(lambda) dlambda
// Trapezoid rule, |lambda| <= 40, step 0.01. The signature decays like
// exp(-|lambda|/2) or faster, so the truncated tail is ~1e-9.
double hb_spectrum_quadrature(const KernelSpec& spec, double omega) {
    constexpr double window = 40.0;
    constexpr double step = 0.01;
    const int n = static_cast<int>(window / step);
    double sum = 0.5 * signature(spec, 0.0);
    for (int i = 1; i < n; ++i) {
        const double lambda = i * step;
        sum += std::cos(omega * lambda) * signature(spec, lambda);
    }
    sum += 0.5 * std::cos(omega * window) * signature(spec, window);
    return sum * step / kPi; // doubled for the negative half-axis
}

double hb_spectrum_cached(const KernelSpec& spec, double omega) {
    using Key = std::tuple<double, double, double>;
    static std::map<Key, double> cache;
    static std::mutex mutex;
    const Key key{spec.alpha, spec.beta, omega};
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const double rho = guard_spectrum(hb_spectrum_quadrature(spec, omega));
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, rho);
    return rho;
}

} // namespace

std::string to_string(KernelKind kind) {
    switch (kind) {
    case KernelKind::Hellinger: return "hellinger";
    case KernelKind::ChiSquare: return "chi2";
    case KernelKind::Intersection: return "intersection";
    case KernelKind::JensenShannon: return "js";
    case KernelKind::HeinBousquet: return "hein-bousquet";
    }
    throw std::logic_error("to_string: bad KernelKind");
}

KernelKind kernel_kind_from_string(const std::string& name) {
    if (name == "hellinger") return KernelKind::Hellinger;
    if (name == "chi2" || name == "chisquare" || name == "chi-square") return KernelKind::ChiSquare;
    if (name == "intersection" || name == "hik") return KernelKind::Intersection;
    if (name == "js" || name == "jensen-shannon" || name == "jensenshannon")
        return KernelKind::JensenShannon;
    if (name == "hein-bousquet" || name == "heinbousquet" || name == "hb")
        return KernelKind::HeinBousquet;
    throw std::invalid_argument("unknown kernel: " + name);
}

KernelSpec KernelSpec::hellinger() { return {KernelKind::Hellinger, 1.0, 1.0, 1.0}; }
KernelSpec KernelSpec::chi_square() { return {KernelKind::ChiSquare, 1.0, 1.0, 1.0}; }
KernelSpec KernelSpec::intersection() { return {KernelKind::Intersection, 1.0, 1.0, 1.0}; }
KernelSpec KernelSpec::jensen_shannon() { return {KernelKind::JensenShannon, 1.0, 1.0, 1.0}; }
KernelSpec KernelSpec::hein_bousquet(double alpha, double beta) {
    return {KernelKind::HeinBousquet, alpha, beta, 1.0};
}

void KernelSpec::validate() const {
    if (gamma != 1.0)
        throw std::invalid_argument("KernelSpec: every supported kernel is 1-homogeneous; "
                                    "gamma must be 1");
    if (kind != KernelKind::HeinBousquet) return;
    if (std::isnan(alpha) || std::isnan(beta))
        throw std::invalid_argument("KernelSpec: alpha/beta must not be NaN");
    if (alpha < 1.0) throw std::invalid_argument("KernelSpec: Hein-Bousquet needs alpha >= 1");
    const bool positive_branch = beta >= 0.5 && beta <= alpha;
    const bool negative_branch = beta <= -1.0;
    if (!positive_branch && !negative_branch)
        throw std::invalid_argument(
            "KernelSpec: Hein-Bousquet needs beta in [1/2, alpha] or beta <= -1");
    if (std::isinf(alpha) && std::isinf(beta))
        throw std::invalid_argument("KernelSpec: alpha and beta cannot both be infinite");
}

double kernel_scalar(const KernelSpec& spec, double a, double b) {
    if (a < 0.0 || b < 0.0) throw std::invalid_argument("kernel_scalar: negative input");
    switch (spec.kind) {
    case KernelKind::Hellinger: return std::sqrt(a * b);
    case KernelKind::ChiSquare: return (a + b) > 0.0 ? 2.0 * a * b / (a + b) : 0.0;
    case KernelKind::Intersection: return std::min(a, b);
    case KernelKind::JensenShannon: return js_scalar(a, b);
    case KernelKind::HeinBousquet: return hb_scalar(spec.alpha, spec.beta, a, b);
    }
    throw std::logic_error("kernel_scalar: bad KernelKind");
}

double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y) {
    spec.validate();
    if (x.size() != y.size())
        throw std::invalid_argument("kernel_eval: dimension mismatch (" +
                                    std::to_string(x.size()) + " vs " + std::to_string(y.size()) +
                                    ")");
    double sum = 0.0;
    for (std::size_t l = 0; l < x.size(); ++l) sum += kernel_scalar(spec, x[l], y[l]);
    return sum;
}

double signature(const KernelSpec& spec, double lambda) {
    spec.validate();
    const double l = std::abs(lambda); // every supported signature is even
    switch (spec.kind) {
    case KernelKind::Hellinger: return 1.0;
    case KernelKind::ChiSquare: return 1.0 / std::cosh(0.5 * l);
    case KernelKind::Intersection: return std::exp(-0.5 * l);
    case KernelKind::JensenShannon: {
        if (l > 1400.0) return 0.0; // exp(l/2) would overflow; kappa ~ l exp(-l/2)
        const double log1pe = std::log1p(std::exp(-l));
        const double t1 = 0.5 * std::exp(0.5 * l) * log1pe / kLn2;
        const double t2 = 0.5 * std::exp(-0.5 * l) * (l + log1pe) / kLn2;
        return t1 + t2;
    }
    case KernelKind::HeinBousquet: {
        if (l > 1400.0) return 0.0;
        return kernel_scalar(spec, std::exp(0.5 * l), std::exp(-0.5 * l));
    }
    }
    throw std::logic_error("signature: bad KernelKind");
}

double spectrum(const KernelSpec& spec, double omega) {
    spec.validate();
    switch (spec.kind) {
    case KernelKind::Hellinger:
        throw std::invalid_argument("Hellinger kernel has a closed-form map; its spectrum is a "
                                    "Dirac delta with no sampled form");
    case KernelKind::ChiSquare: return guard_spectrum(1.0 / std::cosh(kPi * omega));
    case KernelKind::Intersection:
        return guard_spectrum((2.0 / kPi) / (1.0 + 4.0 * omega * omega));
    case KernelKind::JensenShannon:
        return guard_spectrum(2.0 / std::log(4.0) / std::cosh(kPi * omega) /
                              (1.0 + 4.0 * omega * omega));
    case KernelKind::HeinBousquet: return hb_spectrum_cached(spec, omega);
    }
    throw std::logic_error("spectrum: bad KernelKind");
}

} // namespace kernmink
