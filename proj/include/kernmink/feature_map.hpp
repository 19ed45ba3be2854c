#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kernmink/kernels.hpp"
#include "kernmink/matrix.hpp"

namespace kernmink {

/// Spectrum sampling layout: n samples per side at spacing `period` in
/// frequency, giving a (2n+1)-dimensional real map per input feature.
struct MapConfig {
    int n = 1;
    double period = 0.5;

    int per_feature_dim() const { return 2 * n + 1; }
    void validate() const;
};

/// A dataset pushed through the explicit map: N x (D * (2n+1)).
struct MappedDataset {
    Matrix values;
    std::size_t source_dims = 0;
    MapConfig map_config;
    KernelSpec kernel;
};

/// Spectrum samples rho(j * period) for j = 0..n. Hellinger has no sampled
/// spectrum (its map is exact) and throws here.
std::vector<double> sampled_spectrum(const KernelSpec& spec, const MapConfig& cfg);

/// The real-encoded sampled feature map of a scalar a >= 0:
///   out[0]    = sqrt(a^gamma * L * rho(0))
///   out[2j-1] = sqrt(2L * a^gamma * rho(jL)) * cos(jL * log a)
///   out[2j]   = sqrt(2L * a^gamma * rho(jL)) * sin(jL * log a)
/// a = 0 maps to the zero vector. Hellinger maps exactly to [sqrt(a), 0...]
/// regardless of n.
void map_scalar(const KernelSpec& spec, const MapConfig& cfg, double a, std::span<double> out);
std::vector<double> map_scalar(const KernelSpec& spec, const MapConfig& cfg, double a);

/// Row i of the result is the concatenation of map_scalar over the D input
/// features of sample i. Deterministic and data-independent; rows may be
/// mapped in parallel.
MappedDataset map_dataset(const KernelSpec& spec, const MapConfig& cfg, const Dataset& data);

/// Dot-product-vs-kernel error statistics over random row pairs.
struct ApproximationReport {
    double max_abs = 0.0;
    double mean_abs = 0.0;
    double max_rel = 0.0;
    double mean_rel = 0.0;
    std::size_t pairs = 0;
};

ApproximationReport approximation_report(const KernelSpec& spec, const MapConfig& cfg,
                                         const Dataset& data, std::size_t pairs,
                                         std::uint64_t seed = 0);

} // namespace kernmink
