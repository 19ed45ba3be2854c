#include "kernmink/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "kernmink/random.hpp"

namespace kernmink {

namespace {

double lp_norm(std::span<const double> x, double p) {
    double s = 0.0;
    for (double v : x) s += pow_abs(v, p);
    return std::pow(s, 1.0 / p);
}

std::vector<double> norms(const Matrix& points, double p) {
    std::vector<double> out(points.rows());
    for (std::size_t i = 0; i < points.rows(); ++i) out[i] = lp_norm(points.row(i), p);
    return out;
}

Matrix generate(GeneratorKind kind, std::size_t n, std::size_t d, std::uint64_t seed) {
    auto rng = make_rng(seed);
    Matrix m(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j)
            m(i, j) = kind == GeneratorKind::Uniform ? uniform01(rng) : normal(rng);
    return m;
}

} // namespace

std::string to_string(GeneratorKind kind) {
    switch (kind) {
    case GeneratorKind::Uniform: return "uniform";
    case GeneratorKind::Normal: return "normal";
    }
    throw std::logic_error("to_string: bad GeneratorKind");
}

GeneratorKind generator_kind_from_string(const std::string& name) {
    if (name == "uniform") return GeneratorKind::Uniform;
    if (name == "normal" || name == "gaussian") return GeneratorKind::Normal;
    throw std::invalid_argument("unknown generator: " + name);
}

double relative_contrast(const Matrix& points, Exponent p) {
    if (points.rows() < 2)
        throw std::invalid_argument("relative_contrast: need at least two points");
    const auto ns = norms(points, p.value());
    double mn = ns[0], mx = ns[0];
    for (double v : ns) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    const double scale = std::pow(static_cast<double>(points.cols()),
                                  1.0 / p.value() - 0.5);
    return (mx - mn) / scale;
}

double relative_variance(const Matrix& points, Exponent p) {
    if (points.rows() < 2)
        throw std::invalid_argument("relative_variance: need at least two points");
    const auto ns = norms(points, p.value());
    double mean = 0.0;
    for (double v : ns) mean += v;
    mean /= static_cast<double>(ns.size());
    if (mean <= 0.0)
        throw std::invalid_argument("relative_variance: zero mean norm (all-zero data?)");
    double var = 0.0;
    for (double v : ns) var += (v - mean) * (v - mean);
    var /= static_cast<double>(ns.size() - 1);
    return std::sqrt(var) / mean;
}

DiagnosticsReport concentration_sweep(GeneratorKind generator, std::span<const double> p_grid,
                                      std::span<const std::size_t> d_grid, std::size_t n,
                                      std::uint64_t seed) {
    if (p_grid.empty() || d_grid.empty())
        throw std::invalid_argument("concentration_sweep: empty grid");
    if (n < 2) throw std::invalid_argument("concentration_sweep: need n >= 2");
    for (std::size_t d : d_grid)
        if (d < 1) throw std::invalid_argument("concentration_sweep: D must be >= 1");

    DiagnosticsReport report;
    report.generator = generator;
    std::uint64_t probe_index = 0;
    for (double p : p_grid) {
        const Exponent exponent(p); // validates p > 0
        for (std::size_t d : d_grid) {
            const std::uint64_t probe_seed = derive_seed(seed, probe_index++);
            const Matrix data = generate(generator, n, d, probe_seed);
            ConcentrationProbe probe;
            probe.p = p;
            probe.dims = d;
            probe.n = n;
            probe.seed = probe_seed;
            probe.relative_contrast = relative_contrast(data, exponent);
            probe.relative_variance = relative_variance(data, exponent);
            report.probes.push_back(probe);
        }
    }
    return report;
}

} // namespace kernmink
