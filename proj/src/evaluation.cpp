#include "kernmink/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "kernmink/random.hpp"

namespace kernmink {

namespace {

// Stratified labeled subset: proportional per class, at least one per
// class, chosen by a seeded shuffle within each class. Returned sorted.
std::vector<std::size_t> stratified_sample(std::span<const int> labels, double fraction,
                                           std::mt19937_64& rng) {
    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

    std::vector<std::size_t> subset;
    for (auto& [cls, idx] : by_class) {
        std::size_t take = static_cast<std::size_t>(
            std::llround(fraction * static_cast<double>(idx.size())));
        take = std::clamp<std::size_t>(take, 1, idx.size());
        for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
            const std::size_t j = i + static_cast<std::size_t>(uniform_index(rng, idx.size() - i));
            std::swap(idx[i], idx[j]);
        }
        subset.insert(subset.end(), idx.begin(), idx.begin() + take);
    }
    std::sort(subset.begin(), subset.end());
    return subset;
}

std::vector<int> take(std::span<const int> values, std::span<const std::size_t> idx) {
    std::vector<int> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back(values[i]);
    return out;
}

} // namespace

Contingency contingency_table(std::span<const int> rows, std::span<const int> cols) {
    if (rows.size() != cols.size())
        throw std::invalid_argument("contingency_table: length mismatch");
    Contingency c;
    c.total = rows.size();

    std::map<int, std::size_t> row_index, col_index;
    for (int v : rows) row_index.emplace(v, 0);
    for (int v : cols) col_index.emplace(v, 0);
    std::size_t r = 0;
    for (auto& [v, i] : row_index) {
        i = r++;
        c.row_ids.push_back(v);
    }
    std::size_t cc = 0;
    for (auto& [v, i] : col_index) {
        i = cc++;
        c.col_ids.push_back(v);
    }

    c.counts.assign(row_index.size(), std::vector<long long>(col_index.size(), 0));
    for (std::size_t i = 0; i < rows.size(); ++i)
        ++c.counts[row_index[rows[i]]][col_index[cols[i]]];
    return c;
}

double nmi(std::span<const int> labels, std::span<const int> assignments) {
    if (labels.size() != assignments.size())
        throw std::invalid_argument("nmi: length mismatch");
    if (labels.empty()) throw std::invalid_argument("nmi: empty input");

    const Contingency c = contingency_table(labels, assignments);
    const double n = static_cast<double>(c.total);

    std::vector<double> row_sums(c.row_ids.size(), 0.0);
    std::vector<double> col_sums(c.col_ids.size(), 0.0);
    for (std::size_t i = 0; i < c.counts.size(); ++i)
        for (std::size_t j = 0; j < c.counts[i].size(); ++j) {
            row_sums[i] += static_cast<double>(c.counts[i][j]);
            col_sums[j] += static_cast<double>(c.counts[i][j]);
        }

    double h_rows = 0.0, h_cols = 0.0, mi = 0.0;
    for (double s : row_sums)
        if (s > 0.0) h_rows -= s / n * std::log(s / n);
    for (double s : col_sums)
        if (s > 0.0) h_cols -= s / n * std::log(s / n);
    for (std::size_t i = 0; i < c.counts.size(); ++i)
        for (std::size_t j = 0; j < c.counts[i].size(); ++j) {
            const double nij = static_cast<double>(c.counts[i][j]);
            if (nij > 0.0) mi += nij / n * std::log(n * nij / (row_sums[i] * col_sums[j]));
        }

    const double denom = 0.5 * (h_rows + h_cols);
    if (denom <= 0.0) return 1.0; // both partitions constant: identical up to relabeling
    const double value = mi / denom;
    return std::clamp(value, 0.0, 1.0);
}

double purity(std::span<const int> labels, std::span<const int> assignments) {
    if (labels.size() != assignments.size())
        throw std::invalid_argument("purity: length mismatch");
    if (labels.empty()) throw std::invalid_argument("purity: empty input");
    const Contingency c = contingency_table(assignments, labels);
    long long correct = 0;
    for (const auto& row : c.counts) correct += *std::max_element(row.begin(), row.end());
    return static_cast<double>(correct) / static_cast<double>(c.total);
}

MetricResult evaluate_clustering(std::span<const int> labels, std::span<const int> assignments) {
    MetricResult r;
    r.nmi = nmi(labels, assignments);
    r.purity = purity(labels, assignments);
    r.contingency = contingency_table(assignments, labels);
    return r;
}

std::vector<double> default_p_grid() {
    std::vector<double> grid{0.5, 0.7, 0.9};
    for (int i = 10; i <= 31; ++i) grid.push_back(i / 10.0);
    return grid;
}

PSelectionResult select_p(const Dataset& data, const KernelSpec& spec, const MapConfig& map_cfg,
                          const RunConfig& base_cfg, std::span<const double> grid,
                          double labeled_fraction, int repeats, std::uint64_t seed,
                          bool weighted) {
    if (!data.labels) throw std::invalid_argument("select_p: dataset has no labels");
    if (!(labeled_fraction > 0.0 && labeled_fraction <= 1.0))
        throw std::invalid_argument("select_p: labeled_fraction must be in (0, 1]");
    if (grid.empty()) throw std::invalid_argument("select_p: empty grid");
    if (repeats < 1) throw std::invalid_argument("select_p: repeats must be >= 1");
    base_cfg.validate(data.size());

    const std::vector<int>& labels = *data.labels;
    auto subset_rng = make_rng(derive_seed(seed, 0));
    const auto subset = stratified_sample(labels, labeled_fraction, subset_rng);

    std::set<std::vector<double>> distinct_rows;
    for (std::size_t i : subset) {
        const auto row = data.values.row(i);
        distinct_rows.emplace(row.begin(), row.end());
    }
    if (distinct_rows.size() < static_cast<std::size_t>(base_cfg.k))
        throw std::invalid_argument("select_p: labeled subset has fewer than k distinct points");

    const std::vector<int> sub_labels = take(labels, subset);
    const MappedDataset mapped = map_dataset(spec, map_cfg, data);

    PSelectionResult result;
    result.grid.assign(grid.begin(), grid.end());
    result.labeled_fraction = labeled_fraction;
    result.repeats = repeats;
    result.labeled_indices = subset;
    result.scores.assign(grid.size(), 0.0);

    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        double total = 0.0;
        for (int r = 0; r < repeats; ++r) {
            RunConfig cfg = base_cfg;
            cfg.p = Exponent(grid[gi]);
            cfg.init = RunConfig::default_init_for(cfg.p);
            // Seeds are paired across grid values so every exponent sees the
            // same sequence of restart conditions.
            cfg.seed = derive_seed(seed, 1 + static_cast<std::uint64_t>(r));
            const ClusterModel model = minkowski_weighted_kmeans(mapped.values, cfg, weighted);
            const std::vector<int> sub_assign = take(model.assignments, subset);
            total += nmi(sub_labels, sub_assign);
        }
        result.scores[gi] = total / static_cast<double>(repeats);
    }

    std::size_t best = 0;
    for (std::size_t gi = 1; gi < grid.size(); ++gi) {
        if (result.scores[gi] > result.scores[best] ||
            (result.scores[gi] == result.scores[best] && grid[gi] < grid[best]))
            best = gi;
    }
    result.chosen_p = grid[best];
    return result;
}

} // namespace kernmink
