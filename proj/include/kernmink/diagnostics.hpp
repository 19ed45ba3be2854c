#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kernmink/matrix.hpp"
#include "kernmink/minkowski.hpp"

namespace kernmink {

/// Synthetic generators for concentration probes.
enum class GeneratorKind { Uniform, Normal };

std::string to_string(GeneratorKind kind);
GeneratorKind generator_kind_from_string(const std::string& name);

struct ConcentrationProbe {
    double p = 2.0;
    std::size_t dims = 0;
    double relative_contrast = 0.0;
    double relative_variance = 0.0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
};

struct DiagnosticsReport {
    GeneratorKind generator = GeneratorKind::Uniform;
    std::vector<ConcentrationProbe> probes;
};

/// (max_i ||x_i||_p - min_i ||x_i||_p) / D^(1/p - 1/2), using the rooted
/// Minkowski norm. Needs at least two points.
double relative_contrast(const Matrix& points, Exponent p);

/// Sample standard deviation of the norms divided by their sample mean;
/// smaller values mean stronger concentration. Throws when the mean norm
/// is zero.
double relative_variance(const Matrix& points, Exponent p);

/// One probe per (p, D) grid cell on freshly generated data; deterministic
/// per seed.
DiagnosticsReport concentration_sweep(GeneratorKind generator, std::span<const double> p_grid,
                                      std::span<const std::size_t> d_grid, std::size_t n,
                                      std::uint64_t seed);

} // namespace kernmink
