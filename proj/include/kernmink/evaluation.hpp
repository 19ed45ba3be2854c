#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kernmink/clustering.hpp"
#include "kernmink/matrix.hpp"

namespace kernmink {

/// Cluster-by-class contingency table. Row ids are the distinct values of
/// the first argument, column ids of the second, both in sorted order.
struct Contingency {
    std::vector<std::vector<long long>> counts;
    std::vector<int> row_ids;
    std::vector<int> col_ids;
    std::size_t total = 0;
};

Contingency contingency_table(std::span<const int> rows, std::span<const int> cols);

struct MetricResult {
    double nmi = 0.0;
    double purity = 0.0;
    Contingency contingency; // clusters x classes
};

/// Normalized mutual information: MI over the arithmetic mean of the two
/// entropies, natural logarithms, 0 log 0 = 0. Two constant partitions
/// score 1 (they are identical up to relabeling).
double nmi(std::span<const int> labels, std::span<const int> assignments);

/// Fraction of points that fall in their cluster's majority class.
double purity(std::span<const int> labels, std::span<const int> assignments);

MetricResult evaluate_clustering(std::span<const int> labels, std::span<const int> assignments);

struct PSelectionResult {
    std::vector<double> grid;
    std::vector<double> scores; // mean labeled-subset NMI per grid value
    double chosen_p = 0.0;
    double labeled_fraction = 0.0;
    int repeats = 0;
    std::vector<std::size_t> labeled_indices;
};

/// Default exponent grid for selection: 0.5, 0.7, 0.9, then 1.0 .. 3.1 in
/// steps of 0.1.
std::vector<double> default_p_grid();

/// Semi-supervised exponent selection: cluster the full dataset at each
/// grid exponent `repeats` times with distinct seeds, score each run by
/// NMI restricted to a stratified labeled subset (the same subset for
/// every exponent), and pick the argmax of the mean score, ties toward
/// smaller p.
PSelectionResult select_p(const Dataset& data, const KernelSpec& spec, const MapConfig& map_cfg,
                          const RunConfig& base_cfg, std::span<const double> grid,
                          double labeled_fraction, int repeats, std::uint64_t seed,
                          bool weighted = false);

} // namespace kernmink
