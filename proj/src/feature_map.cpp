#include "kernmink/feature_map.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kernmink/parallel.hpp"
#include "kernmink/random.hpp"

namespace kernmink {

namespace {

void map_scalar_sampled(const KernelSpec& spec, const MapConfig& cfg,
                        std::span<const double> rho, double a, std::span<double> out) {
    const double L = cfg.period;
    if (a == 0.0) {
        for (auto& v : out) v = 0.0;
        return;
    }
    const double ag = spec.gamma == 1.0 ? a : std::pow(a, spec.gamma);
    const double la = std::log(a);
    out[0] = std::sqrt(ag * L * rho[0]);
    for (int j = 1; j <= cfg.n; ++j) {
        const double omega = j * L;
        const double mag = std::sqrt(2.0 * L * ag * rho[j]);
        out[2 * j - 1] = mag * std::cos(omega * la);
        out[2 * j] = mag * std::sin(omega * la);
    }
}

} // namespace

void MapConfig::validate() const {
    if (n < 0) throw std::invalid_argument("MapConfig: n must be >= 0");
    if (!(period > 0.0)) throw std::invalid_argument("MapConfig: period must be > 0");
}

std::vector<double> sampled_spectrum(const KernelSpec& spec, const MapConfig& cfg) {
    spec.validate();
    cfg.validate();
    std::vector<double> rho(cfg.n + 1);
    for (int j = 0; j <= cfg.n; ++j) rho[j] = spectrum(spec, j * cfg.period);
    return rho;
}

void map_scalar(const KernelSpec& spec, const MapConfig& cfg, double a, std::span<double> out) {
    spec.validate();
    cfg.validate();
    if (a < 0.0) throw std::invalid_argument("map_scalar: negative input");
    if (out.size() != static_cast<std::size_t>(cfg.per_feature_dim()))
        throw std::invalid_argument("map_scalar: output span has wrong length");
    if (spec.kind == KernelKind::Hellinger) {
        // Exact one-dimensional map, zero-padded for shape uniformity.
        out[0] = std::sqrt(a);
        for (std::size_t i = 1; i < out.size(); ++i) out[i] = 0.0;
        return;
    }
    const auto rho = sampled_spectrum(spec, cfg);
    map_scalar_sampled(spec, cfg, rho, a, out);
}

std::vector<double> map_scalar(const KernelSpec& spec, const MapConfig& cfg, double a) {
    std::vector<double> out(cfg.per_feature_dim());
    map_scalar(spec, cfg, a, out);
    return out;
}

MappedDataset map_dataset(const KernelSpec& spec, const MapConfig& cfg, const Dataset& data) {
    spec.validate();
    cfg.validate();
    const std::size_t n = data.size();
    const std::size_t d = data.dims();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (data.values(i, j) < 0.0)
                throw std::invalid_argument("map_dataset: negative value at row " +
                                            std::to_string(i) + ", feature " + std::to_string(j));

    const int m = cfg.per_feature_dim();
    MappedDataset out;
    out.values = Matrix(n, d * m);
    out.source_dims = d;
    out.map_config = cfg;
    out.kernel = spec;

    if (spec.kind == KernelKind::Hellinger) {
        parallel_for_blocks(n, [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    out.values(i, j * m) = std::sqrt(data.values(i, j));
        });
        return out;
    }

    const auto rho = sampled_spectrum(spec, cfg);
    parallel_for_blocks(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto row = out.values.row(i);
            for (std::size_t j = 0; j < d; ++j)
                map_scalar_sampled(spec, cfg, rho, data.values(i, j),
                                   row.subspan(j * m, m));
        }
    });
    return out;
}

ApproximationReport approximation_report(const KernelSpec& spec, const MapConfig& cfg,
                                         const Dataset& data, std::size_t pairs,
                                         std::uint64_t seed) {
    if (data.size() == 0) throw std::invalid_argument("approximation_report: empty dataset");
    if (pairs < 1) throw std::invalid_argument("approximation_report: pairs must be >= 1");

    const MappedDataset mapped = map_dataset(spec, cfg, data);
    auto rng = make_rng(seed);

    ApproximationReport report;
    report.pairs = pairs;
    for (std::size_t t = 0; t < pairs; ++t) {
        const std::size_t i = uniform_index(rng, data.size());
        const std::size_t j = uniform_index(rng, data.size());
        const double exact = kernel_eval(spec, data.values.row(i), data.values.row(j));
        double dot = 0.0;
        const auto ri = mapped.values.row(i);
        const auto rj = mapped.values.row(j);
        for (std::size_t l = 0; l < ri.size(); ++l) dot += ri[l] * rj[l];
        const double abs_err = std::abs(dot - exact);
        const double rel_err = abs_err / std::max(std::abs(exact), 1e-300);
        report.max_abs = std::max(report.max_abs, abs_err);
        report.max_rel = std::max(report.max_rel, rel_err);
        report.mean_abs += abs_err;
        report.mean_rel += rel_err;
    }
    report.mean_abs /= static_cast<double>(pairs);
    report.mean_rel /= static_cast<double>(pairs);
    return report;
}

} // namespace kernmink
