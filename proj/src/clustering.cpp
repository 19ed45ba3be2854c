#include "kernmink/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kernmink/random.hpp"

namespace kernmink {

namespace {

Matrix pow_weights(const WeightMatrix& wm, double p) {
    Matrix wp(wm.w.rows(), wm.w.cols());
    for (std::size_t k = 0; k < wm.w.rows(); ++k)
        for (std::size_t l = 0; l < wm.w.cols(); ++l) wp(k, l) = pow_abs(wm.w(k, l), p);
    return wp;
}

double dist_to_center(std::span<const double> x, std::span<const double> m,
                      const double* wpow_row, double p) {
    double s = 0.0;
    if (wpow_row) {
        for (std::size_t l = 0; l < x.size(); ++l) s += wpow_row[l] * pow_abs(x[l] - m[l], p);
    } else {
        for (std::size_t l = 0; l < x.size(); ++l) s += pow_abs(x[l] - m[l], p);
    }
    return s;
}

std::vector<std::size_t> count_members(std::span<const int> a, int k) {
    std::vector<std::size_t> counts(k, 0);
    for (int c : a) ++counts[c];
    return counts;
}

// Empty-cluster repair: seed each empty cluster with the point farthest
// from its current center, drawn from clusters that keep at least one
// member. Deterministic: lowest empty index first, lowest point index on
// distance ties.
void repair_empty_clusters(const Matrix& points, const Matrix& centers, const Matrix* wpow,
                           double p, std::vector<int>& a, std::vector<std::size_t>& counts) {
    const int k = static_cast<int>(centers.rows());
    for (int e = 0; e < k; ++e) {
        if (counts[e] > 0) continue;
        std::size_t best_i = points.rows();
        double best_d = -1.0;
        for (std::size_t i = 0; i < points.rows(); ++i) {
            if (counts[a[i]] < 2) continue;
            const double* wrow = wpow ? (*wpow).row(a[i]).data() : nullptr;
            const double d = dist_to_center(points.row(i), centers.row(a[i]), wrow, p);
            if (d > best_d) {
                best_d = d;
                best_i = i;
            }
        }
        if (best_i == points.rows()) continue; // all clusters singletons; nothing to move
        --counts[a[best_i]];
        a[best_i] = e;
        ++counts[e];
    }
}

Matrix gather_rows(const Matrix& points, std::span<const std::size_t> idx) {
    Matrix out(idx.size(), points.cols());
    for (std::size_t r = 0; r < idx.size(); ++r) {
        const auto src = points.row(idx[r]);
        std::copy(src.begin(), src.end(), out.row(r).begin());
    }
    return out;
}

void recompute_centers(const Matrix& points, std::span<const int> a,
                       std::span<const std::size_t> counts, const RunConfig& cfg, Matrix& centers,
                       long* solver_iterations) {
    const int k = static_cast<int>(centers.rows());
    std::vector<std::vector<std::size_t>> members(k);
    for (int c = 0; c < k; ++c) members[c].reserve(counts[c]);
    for (std::size_t i = 0; i < a.size(); ++i) members[a[i]].push_back(i);
    for (int c = 0; c < k; ++c) {
        if (members[c].empty()) continue; // repaired before we get here; keep stale center
        const Matrix pts = gather_rows(points, members[c]);
        const auto center =
            minkowski_center(pts, cfg.p, std::optional(std::span<const double>(centers.row(c))),
                             cfg.tol, kCenterMaxIter, solver_iterations);
        std::copy(center.begin(), center.end(), centers.row(c).begin());
    }
}

Matrix initial_centers(const Matrix& points, const RunConfig& cfg, bool weighted,
                       std::uint64_t seed);

ClusterModel run_once(const Matrix& points, const RunConfig& cfg, bool weighted,
                      std::uint64_t seed) {
    const std::size_t d = points.cols();
    Matrix centers = initial_centers(points, cfg, weighted, seed);
    WeightMatrix wm = WeightMatrix::uniform(cfg.k, d);
    const WeightMatrix* wptr = weighted ? &wm : nullptr;

    ClusterModel model;
    model.p = cfg.p;

    std::vector<int> a = assign(points, centers, wptr, cfg.p);
    std::vector<std::size_t> counts = count_members(a, cfg.k);
    {
        const Matrix wpow = weighted ? pow_weights(wm, cfg.p.value()) : Matrix();
        repair_empty_clusters(points, centers, weighted ? &wpow : nullptr, cfg.p.value(), a,
                              counts);
    }

    int iter = 0;
    bool converged = false;
    long solver_iters = 0;
    while (iter < cfg.max_iter) {
        recompute_centers(points, a, counts, cfg, centers, &solver_iters);
        if (weighted) wm = update_weights(points, a, centers, cfg.p);
        model.objective_trace.push_back(objective_value(points, a, centers, wptr, cfg.p));
        ++iter;

        std::vector<int> next = assign(points, centers, wptr, cfg.p);
        std::vector<std::size_t> next_counts = count_members(next, cfg.k);
        const Matrix wpow = weighted ? pow_weights(wm, cfg.p.value()) : Matrix();
        repair_empty_clusters(points, centers, weighted ? &wpow : nullptr, cfg.p.value(), next,
                              next_counts);
        if (next == a) {
            converged = true;
            break;
        }
        a = std::move(next);
        counts = std::move(next_counts);
    }

    model.centers = std::move(centers);
    if (weighted) model.weights = std::move(wm);
    model.assignments = std::move(a);
    model.iterations = iter;
    model.converged = converged;
    model.center_solver_iterations = solver_iters;
    model.objective = objective_value(points, model.assignments, model.centers, wptr, cfg.p);
    return model;
}

Matrix initial_centers(const Matrix& points, const RunConfig& cfg, bool /*weighted*/,
                       std::uint64_t seed) {
    switch (cfg.init) {
    case InitMethod::RandomPoints: {
        auto rng = make_rng(seed);
        const auto idx = sample_distinct_indices(rng, points.rows(), cfg.k);
        return gather_rows(points, idx);
    }
    case InitMethod::WarmStartP2: return warm_start(points, cfg.k, seed, cfg.max_iter);
    case InitMethod::WarmStartP1: {
        RunConfig base = cfg;
        base.p = Exponent(1.0);
        base.init = InitMethod::RandomPoints;
        base.restarts = 1;
        return run_once(points, base, false, seed).centers;
    }
    case InitMethod::Provided: {
        if (!cfg.provided_centers)
            throw std::invalid_argument("RunConfig: init=provided without provided_centers");
        if (cfg.provided_centers->rows() != static_cast<std::size_t>(cfg.k) ||
            cfg.provided_centers->cols() != points.cols())
            throw std::invalid_argument("RunConfig: provided_centers has wrong shape");
        return *cfg.provided_centers;
    }
    }
    throw std::logic_error("initial_centers: bad InitMethod");
}

} // namespace

std::string to_string(InitMethod init) {
    switch (init) {
    case InitMethod::RandomPoints: return "random";
    case InitMethod::WarmStartP2: return "warm2";
    case InitMethod::WarmStartP1: return "warm1";
    case InitMethod::Provided: return "provided";
    }
    throw std::logic_error("to_string: bad InitMethod");
}

InitMethod init_method_from_string(const std::string& name) {
    if (name == "random" || name == "random_points") return InitMethod::RandomPoints;
    if (name == "warm2" || name == "warm_start_p2") return InitMethod::WarmStartP2;
    if (name == "warm1" || name == "warm_start_p1") return InitMethod::WarmStartP1;
    if (name == "provided") return InitMethod::Provided;
    throw std::invalid_argument("unknown init method: " + name);
}

InitMethod RunConfig::default_init_for(Exponent p) {
    return p.value() == 2.0 ? InitMethod::RandomPoints : InitMethod::WarmStartP2;
}

void RunConfig::validate(std::size_t n_points) const {
    if (k < 1) throw std::invalid_argument("RunConfig: k must be >= 1");
    if (static_cast<std::size_t>(k) > n_points)
        throw std::invalid_argument("RunConfig: k = " + std::to_string(k) + " exceeds N = " +
                                    std::to_string(n_points));
    if (max_iter < 1) throw std::invalid_argument("RunConfig: max_iter must be >= 1");
    if (restarts < 1) throw std::invalid_argument("RunConfig: restarts must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("RunConfig: tol must be > 0");
}

std::vector<std::size_t> ClusterModel::cluster_sizes(std::size_t k) const {
    std::vector<std::size_t> sizes(k, 0);
    for (int c : assignments) ++sizes[c];
    return sizes;
}

std::vector<int> assign(const Matrix& points, const Matrix& centers, const WeightMatrix* weights,
                        Exponent p) {
    if (centers.rows() == 0) throw std::invalid_argument("assign: no centers");
    if (centers.cols() != points.cols())
        throw std::invalid_argument("assign: dimension mismatch between points and centers");
    if (weights &&
        (weights->w.rows() != centers.rows() || weights->w.cols() != centers.cols()))
        throw std::invalid_argument("assign: weight matrix shape mismatch");

    const double pv = p.value();
    const Matrix wpow = weights ? pow_weights(*weights, pv) : Matrix();
    const std::size_t k = centers.rows();

    std::vector<int> a(points.rows(), 0);
    for (std::size_t i = 0; i < points.rows(); ++i) {
        const auto x = points.row(i);
        int best = 0;
        double best_d = dist_to_center(x, centers.row(0), weights ? wpow.row(0).data() : nullptr, pv);
        for (std::size_t c = 1; c < k; ++c) {
            const double d =
                dist_to_center(x, centers.row(c), weights ? wpow.row(c).data() : nullptr, pv);
            if (d < best_d) { // ties keep the lowest cluster index
                best_d = d;
                best = static_cast<int>(c);
            }
        }
        a[i] = best;
    }
    return a;
}

double objective_value(const Matrix& points, std::span<const int> assignments,
                       const Matrix& centers, const WeightMatrix* weights, Exponent p) {
    if (assignments.size() != points.rows())
        throw std::invalid_argument("objective_value: assignment length mismatch");
    if (centers.cols() != points.cols())
        throw std::invalid_argument("objective_value: dimension mismatch");
    const double pv = p.value();
    const Matrix wpow = weights ? pow_weights(*weights, pv) : Matrix();
    double obj = 0.0;
    for (std::size_t i = 0; i < points.rows(); ++i) {
        const int c = assignments[i];
        if (c < 0 || static_cast<std::size_t>(c) >= centers.rows())
            throw std::invalid_argument("objective_value: assignment out of range");
        obj += dist_to_center(points.row(i), centers.row(c), weights ? wpow.row(c).data() : nullptr, pv);
    }
    return obj;
}

WeightMatrix update_weights(const Matrix& points, std::span<const int> assignments,
                            const Matrix& centers, Exponent p) {
    if (assignments.size() != points.rows())
        throw std::invalid_argument("update_weights: assignment length mismatch");
    const std::size_t k = centers.rows();
    const std::size_t d = centers.cols();
    const double pv = p.value();

    Matrix V(k, d, 0.0);
    for (std::size_t i = 0; i < points.rows(); ++i) {
        const int c = assignments[i];
        const auto x = points.row(i);
        const auto m = centers.row(c);
        for (std::size_t l = 0; l < d; ++l) V(c, l) += pow_abs(x[l] - m[l], pv);
    }

    WeightMatrix wm;
    wm.w = Matrix(k, d, 0.0);
    std::vector<double> row(d);
    for (std::size_t c = 0; c < k; ++c) {
        double mean = 0.0;
        for (std::size_t l = 0; l < d; ++l) mean += V(c, l);
        mean /= static_cast<double>(d);
        const double eps = 1e-12 * (1.0 + mean);
        for (std::size_t l = 0; l < d; ++l) row[l] = std::max(V(c, l), eps);

        if (pv > 1.0) {
            // w_l = 1 / sum_u (V_l / V_u)^(1/(p-1)), evaluated in log space
            const double e = 1.0 / (pv - 1.0);
            double mx = -std::numeric_limits<double>::infinity();
            std::vector<double> lw(d);
            for (std::size_t l = 0; l < d; ++l) {
                lw[l] = -e * std::log(row[l]);
                mx = std::max(mx, lw[l]);
            }
            double sum = 0.0;
            for (std::size_t l = 0; l < d; ++l) {
                lw[l] = std::exp(lw[l] - mx);
                sum += lw[l];
            }
            for (std::size_t l = 0; l < d; ++l) wm.w(c, l) = lw[l] / sum;
        } else if (pv == 1.0) {
            // limit of the update as p -> 1+: equal split over the minimal
            // dispersions
            double mn = row[0];
            for (std::size_t l = 1; l < d; ++l) mn = std::min(mn, row[l]);
            std::size_t ties = 0;
            for (std::size_t l = 0; l < d; ++l)
                if (row[l] == mn) ++ties;
            for (std::size_t l = 0; l < d; ++l) wm.w(c, l) = row[l] == mn ? 1.0 / ties : 0.0;
        } else {
            // p < 1: the objective is concave in w, so the minimizer over the
            // simplex is a vertex; all mass on the first minimal dispersion
            std::size_t arg = 0;
            for (std::size_t l = 1; l < d; ++l)
                if (row[l] < row[arg]) arg = l;
            wm.w(c, arg) = 1.0;
        }
    }
    return wm;
}

Matrix warm_start(const Matrix& points, int k, std::uint64_t seed, int max_iter) {
    RunConfig cfg;
    cfg.k = k;
    cfg.p = Exponent(2.0);
    cfg.max_iter = max_iter;
    cfg.init = InitMethod::RandomPoints;
    cfg.restarts = 1;
    cfg.validate(points.rows());
    return run_once(points, cfg, false, seed).centers;
}

ClusterModel minkowski_weighted_kmeans(const Matrix& points, const RunConfig& cfg, bool weighted) {
    cfg.validate(points.rows());
    ClusterModel best;
    for (int r = 0; r < cfg.restarts; ++r) {
        ClusterModel m = run_once(points, cfg, weighted, derive_seed(cfg.seed, r));
        if (r == 0 || m.objective < best.objective) best = std::move(m);
    }
    return best;
}

ClusterModel lloyd_kmeans(const Dataset& data, const RunConfig& cfg) {
    if (cfg.p.value() != 2.0)
        throw std::invalid_argument("lloyd_kmeans: classic mode requires p = 2");
    return minkowski_weighted_kmeans(data.values, cfg, false);
}

ClusterModel exact_kernel_kmeans(const Dataset& data, const KernelSpec& spec,
                                 const RunConfig& cfg) {
    spec.validate();
    cfg.validate(data.size());
    if (cfg.p.value() != 2.0)
        throw std::invalid_argument(
            "exact_kernel_kmeans: the feature-space expansion is Euclidean only (p = 2)");

    const std::size_t n = data.size();
    Matrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = kernel_eval(spec, data.values.row(i), data.values.row(j));
            gram(i, j) = v;
            gram(j, i) = v;
        }

    const int k = cfg.k;

    // Point-to-cluster squared distance via the three-term expansion:
    //   K(i,i) - 2/|C| sum_{j in C} K(i,j) + 1/|C|^2 sum_{j,l in C} K(j,l)
    struct Stats {
        Matrix rowsum;               // N x K: sum_{j in C_c} K(i, j)
        std::vector<double> within;  // K: T3_c = within-cluster double sum / |C_c|^2
        std::vector<std::size_t> counts;
    };
    auto compute_stats = [&](const std::vector<int>& a) {
        Stats s;
        s.rowsum = Matrix(n, k, 0.0);
        s.within.assign(k, 0.0);
        s.counts = count_members(a, k);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) s.rowsum(i, a[j]) += gram(i, j);
        for (std::size_t i = 0; i < n; ++i) s.within[a[i]] += s.rowsum(i, a[i]);
        for (int c = 0; c < k; ++c)
            if (s.counts[c] > 0)
                s.within[c] /= static_cast<double>(s.counts[c]) * static_cast<double>(s.counts[c]);
        return s;
    };
    auto dist = [&](const Stats& s, std::size_t i, int c) {
        return gram(i, i) - 2.0 * s.rowsum(i, c) / static_cast<double>(s.counts[c]) +
               s.within[c];
    };
    auto repair = [&](const Stats& s, std::vector<int>& a, std::vector<std::size_t>& counts) {
        for (int e = 0; e < k; ++e) {
            if (counts[e] > 0) continue;
            std::size_t best_i = n;
            double best_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[a[i]] < 2 || s.counts[a[i]] == 0) continue;
                const double dd = dist(s, i, a[i]);
                if (dd > best_d) {
                    best_d = dd;
                    best_i = i;
                }
            }
            if (best_i == n) continue;
            --counts[a[best_i]];
            a[best_i] = e;
            ++counts[e];
        }
    };

    ClusterModel best;
    for (int r = 0; r < cfg.restarts; ++r) {
        auto rng = make_rng(derive_seed(cfg.seed, r));
        const auto seed_rows = sample_distinct_indices(rng, n, k);

        // Phase 0: assign to the nearest seed point by kernel distance.
        std::vector<int> a(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            int bc = 0;
            double bd = std::numeric_limits<double>::infinity();
            for (int c = 0; c < k; ++c) {
                const std::size_t sidx = seed_rows[c];
                const double d = gram(i, i) - 2.0 * gram(i, sidx) + gram(sidx, sidx);
                if (d < bd) {
                    bd = d;
                    bc = c;
                }
            }
            a[i] = bc;
        }
        std::vector<std::size_t> counts = count_members(a, k);
        // Phase-0 repairs measure against the seed points themselves.
        for (int e = 0; e < k; ++e) {
            if (counts[e] > 0) continue;
            std::size_t best_i = n;
            double best_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[a[i]] < 2) continue;
                const std::size_t sidx = seed_rows[a[i]];
                const double d = gram(i, i) - 2.0 * gram(i, sidx) + gram(sidx, sidx);
                if (d > best_d) {
                    best_d = d;
                    best_i = i;
                }
            }
            if (best_i == n) continue;
            --counts[a[best_i]];
            a[best_i] = e;
            ++counts[e];
        }

        ClusterModel model;
        model.p = cfg.p;
        int iter = 0;
        bool converged = false;
        Stats stats = compute_stats(a);
        while (iter < cfg.max_iter) {
            double obj = 0.0;
            for (std::size_t i = 0; i < n; ++i) obj += std::max(0.0, dist(stats, i, a[i]));
            model.objective_trace.push_back(obj);
            ++iter;

            std::vector<int> next(n, 0);
            for (std::size_t i = 0; i < n; ++i) {
                int bc = 0;
                double bd = std::numeric_limits<double>::infinity();
                for (int c = 0; c < k; ++c) {
                    if (stats.counts[c] == 0) continue;
                    const double d = dist(stats, i, c);
                    if (d < bd) {
                        bd = d;
                        bc = c;
                    }
                }
                next[i] = bc;
            }
            std::vector<std::size_t> next_counts = count_members(next, k);
            repair(stats, next, next_counts);
            if (next == a) {
                converged = true;
                break;
            }
            a = std::move(next);
            counts = std::move(next_counts);
            stats = compute_stats(a);
        }

        stats = compute_stats(a);
        double obj = 0.0;
        for (std::size_t i = 0; i < n; ++i) obj += std::max(0.0, dist(stats, i, a[i]));
        model.assignments = std::move(a);
        model.iterations = iter;
        model.converged = converged;
        model.objective = obj;
        if (r == 0 || model.objective < best.objective) best = std::move(model);
    }
    return best;
}

ClusterModel explicit_kmwk_means(const Dataset& data, const KernelSpec& spec,
                                 const MapConfig& map_cfg, const RunConfig& cfg, bool weighted) {
    const MappedDataset mapped = map_dataset(spec, map_cfg, data);
    return minkowski_weighted_kmeans(mapped.values, cfg, weighted);
}

} // namespace kernmink
