#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kernmink/clustering.hpp"
#include "kernmink/csv.hpp"
#include "kernmink/diagnostics.hpp"
#include "kernmink/evaluation.hpp"
#include "kernmink/report.hpp"

namespace {

using kernmink::json;

struct KernelOptions {
    std::string name = "chi2";
    double alpha = 1.0;
    double beta = 1.0;
    int map_n = 1;
    double map_period = 0.5;

    bool is_none() const { return name == "none"; }

    kernmink::KernelSpec spec() const {
        if (name == "hein-bousquet" || name == "heinbousquet" || name == "hb")
            return kernmink::KernelSpec::hein_bousquet(alpha, beta);
        kernmink::KernelSpec s;
        s.kind = kernmink::kernel_kind_from_string(name);
        return s;
    }

    kernmink::MapConfig map_config() const { return {map_n, map_period}; }
};

void add_kernel_options(CLI::App* cmd, KernelOptions& opts, bool allow_none) {
    std::string desc = "kernel: hellinger|chi2|intersection|js|hein-bousquet";
    if (allow_none) desc += "|none (cluster the raw features)";
    cmd->add_option("--kernel", opts.name, desc)->default_val(opts.name);
    cmd->add_option("--alpha", opts.alpha, "Hein-Bousquet alpha");
    cmd->add_option("--beta", opts.beta, "Hein-Bousquet beta");
    cmd->add_option("--map-n", opts.map_n, "spectrum samples per side (per-feature dim 2n+1)")
        ->default_val(opts.map_n);
    cmd->add_option("--map-period", opts.map_period, "spectrum sampling period L")
        ->default_val(opts.map_period);
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
    std::vector<std::size_t> out;
    for (double v : parse_double_list(text)) out.push_back(static_cast<std::size_t>(v));
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write to " + out_path);
    out << text << '\n';
}

long long ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 t0)
        .count();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Explicit kernel Minkowski weighted K-means"};
    app.require_subcommand(1);

    // --- shared state ------------------------------------------------------
    std::string input_path, out_path, label_column;

    // --- map ---------------------------------------------------------------
    auto* map_cmd = app.add_subcommand("map", "emit the explicitly mapped dataset as CSV");
    KernelOptions map_kernel;
    map_cmd->add_option("-i,--input", input_path, "input CSV")->required();
    map_cmd->add_option("--label-col", label_column, "label column (name or index); dropped");
    map_cmd->add_option("-o,--out", out_path, "output file (default stdout)");
    add_kernel_options(map_cmd, map_kernel, false);

    // --- cluster -----------------------------------------------------------
    auto* cluster_cmd = app.add_subcommand("cluster", "run a clustering engine, report JSON");
    KernelOptions cluster_kernel;
    int k = 2, max_iter = 200, restarts = 10, approx_pairs = 0;
    double p_value = 2.0;
    std::uint64_t seed = 0;
    bool weighted = false, exact_kernel = false;
    std::string init_name = "auto";
    cluster_cmd->add_option("-i,--input", input_path, "input CSV")->required();
    cluster_cmd->add_option("--label-col", label_column,
                            "label column (name or index); enables metrics");
    cluster_cmd->add_option("-o,--out", out_path, "output file (default stdout)");
    add_kernel_options(cluster_cmd, cluster_kernel, true);
    cluster_cmd->add_option("-k,--k", k, "number of clusters")->required();
    cluster_cmd->add_option("-p,--p", p_value, "Minkowski exponent")->default_val(2.0);
    cluster_cmd->add_flag("--weighted", weighted, "per-cluster feature weights");
    cluster_cmd->add_flag("--exact-kernel", exact_kernel,
                          "exact kernel K-means baseline (p = 2, no weights)");
    cluster_cmd->add_option("--init", init_name, "init: auto|random|warm2|warm1")
        ->default_val("auto");
    cluster_cmd->add_option("--restarts", restarts, "seeded restarts, best objective kept")
        ->default_val(10);
    cluster_cmd->add_option("--seed", seed, "master seed")->default_val(0);
    cluster_cmd->add_option("--max-iter", max_iter, "outer iteration cap")->default_val(200);
    cluster_cmd->add_option("--approx-pairs", approx_pairs,
                            "sample this many pairs for map-vs-kernel error stats");

    // --- select-p ----------------------------------------------------------
    auto* select_cmd = app.add_subcommand("select-p", "semi-supervised exponent selection");
    KernelOptions select_kernel;
    std::string grid_text;
    double labeled_frac = 0.15;
    int repeats = 50, select_k = 0, select_max_iter = 200, select_restarts = 1;
    std::uint64_t select_seed = 0;
    bool select_weighted = false;
    select_cmd->add_option("-i,--input", input_path, "input CSV")->required();
    select_cmd->add_option("--label-col", label_column, "label column (name or index)")
        ->required();
    select_cmd->add_option("-o,--out", out_path, "output file (default stdout)");
    add_kernel_options(select_cmd, select_kernel, false);
    select_cmd->add_option("--grid", grid_text, "comma-separated exponents (default 0.5..3.1)");
    select_cmd->add_option("--labeled-frac", labeled_frac, "labeled fraction")->default_val(0.15);
    select_cmd->add_option("--repeats", repeats, "runs per grid value")->default_val(50);
    select_cmd->add_option("-k,--k", select_k, "clusters (default: number of classes)");
    select_cmd->add_flag("--weighted", select_weighted, "select for the weighted engine");
    select_cmd->add_option("--seed", select_seed, "master seed")->default_val(0);
    select_cmd->add_option("--max-iter", select_max_iter, "outer iteration cap")->default_val(200);
    select_cmd->add_option("--restarts", select_restarts, "restarts per run")->default_val(1);

    // --- diag --------------------------------------------------------------
    auto* diag_cmd = app.add_subcommand("diag", "distance-concentration sweep");
    std::string gen_name = "uniform", p_grid_text = "0.5,1,2", d_grid_text = "2,8,32,128";
    std::size_t diag_n = 1000;
    std::uint64_t diag_seed = 0;
    diag_cmd->add_option("--gen", gen_name, "generator: uniform|normal")->default_val("uniform");
    diag_cmd->add_option("--p-grid", p_grid_text, "comma-separated exponents")
        ->default_val(p_grid_text);
    diag_cmd->add_option("--d-grid", d_grid_text, "comma-separated dimensionalities")
        ->default_val(d_grid_text);
    diag_cmd->add_option("--n", diag_n, "points per probe")->default_val(1000);
    diag_cmd->add_option("--seed", diag_seed, "master seed")->default_val(0);
    diag_cmd->add_option("-o,--out", out_path, "output file (default stdout)");

    // --- eval --------------------------------------------------------------
    auto* eval_cmd = app.add_subcommand("eval", "NMI/purity from label and assignment files");
    std::string labels_path, assignments_path;
    eval_cmd->add_option("--labels", labels_path, "file with one class label per line")
        ->required();
    eval_cmd->add_option("--assignments", assignments_path,
                         "file with one cluster index per line")
        ->required();
    eval_cmd->add_option("-o,--out", out_path, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*map_cmd) {
            kernmink::CsvFormat fmt;
            if (!label_column.empty()) fmt.label_column = label_column;
            fmt.require_nonneg = true;
            const kernmink::Dataset data = kernmink::load_dataset(input_path, fmt);
            const auto mapped =
                kernmink::map_dataset(map_kernel.spec(), map_kernel.map_config(), data);
            std::vector<std::string> header;
            for (std::size_t j = 0; j < mapped.values.cols(); ++j)
                header.push_back("m" + std::to_string(j));
            std::ostringstream body;
            kernmink::write_matrix_csv(body, mapped.values, header);
            if (out_path.empty()) {
                std::cout << body.str();
            } else {
                std::ofstream out(out_path, std::ios::binary);
                if (!out) throw std::runtime_error("cannot write to " + out_path);
                out << body.str();
            }
            return 0;
        }

        if (*cluster_cmd) {
            if (exact_kernel && weighted)
                throw std::runtime_error("--exact-kernel cannot be combined with --weighted");
            if (exact_kernel && cluster_kernel.is_none())
                throw std::runtime_error("--exact-kernel needs a kernel");
            if (exact_kernel && p_value != 2.0)
                throw std::runtime_error("--exact-kernel requires p = 2");

            kernmink::CsvFormat fmt;
            if (!label_column.empty()) fmt.label_column = label_column;
            fmt.require_nonneg = !cluster_kernel.is_none();
            const kernmink::Dataset data = kernmink::load_dataset(input_path, fmt);

            kernmink::RunConfig cfg;
            cfg.k = k;
            cfg.p = kernmink::Exponent(p_value);
            cfg.max_iter = max_iter;
            cfg.seed = seed;
            cfg.restarts = restarts;
            cfg.init = init_name == "auto" ? kernmink::RunConfig::default_init_for(cfg.p)
                                           : kernmink::init_method_from_string(init_name);

            json config;
            config["input"] = input_path;
            config["label_column"] = label_column.empty() ? json(nullptr) : json(label_column);
            config["kernel"] = cluster_kernel.is_none() ? json(nullptr)
                                                        : kernmink::kernel_json(
                                                              cluster_kernel.spec());
            config["map"] = cluster_kernel.is_none()
                                ? json(nullptr)
                                : kernmink::map_config_json(cluster_kernel.map_config());
            config["engine"] = exact_kernel ? "exact-kernel"
                               : weighted   ? "explicit-weighted"
                                            : "explicit";
            config["k"] = k;
            config["p"] = p_value;
            config["weighted"] = weighted;
            config["init"] = kernmink::to_string(cfg.init);
            config["restarts"] = restarts;
            config["seed"] = seed;
            config["max_iter"] = max_iter;
            config["tol"] = cfg.tol;

            const auto t0 = std::chrono::steady_clock::now();
            long long map_ms = 0;
            kernmink::ClusterModel model;
            std::optional<kernmink::ApproximationReport> approx;
            if (exact_kernel) {
                model = kernmink::exact_kernel_kmeans(data, cluster_kernel.spec(), cfg);
            } else if (cluster_kernel.is_none()) {
                model = kernmink::minkowski_weighted_kmeans(data.values, cfg, weighted);
            } else {
                const auto tm = std::chrono::steady_clock::now();
                const auto mapped = kernmink::map_dataset(cluster_kernel.spec(),
                                                          cluster_kernel.map_config(), data);
                map_ms = ms_since(tm);
                model = kernmink::minkowski_weighted_kmeans(mapped.values, cfg, weighted);
                if (approx_pairs > 0)
                    approx = kernmink::approximation_report(cluster_kernel.spec(),
                                                            cluster_kernel.map_config(), data,
                                                            approx_pairs, seed);
            }
            const long long total_ms = ms_since(t0);

            json report = kernmink::make_report("cluster", std::move(config));
            report["model"] = kernmink::model_json(model, k);
            if (data.labels)
                report["metrics"] =
                    kernmink::metrics_json(kernmink::evaluate_clustering(*data.labels,
                                                                         model.assignments));
            if (approx) report["approximation"] = kernmink::approximation_json(*approx);
            report["timing"] = json{{"map_ms", map_ms}, {"cluster_ms", total_ms - map_ms}};
            emit(report.dump(2), out_path);
            return 0;
        }

        if (*select_cmd) {
            kernmink::CsvFormat fmt;
            fmt.label_column = label_column;
            fmt.require_nonneg = true;
            const kernmink::Dataset data = kernmink::load_dataset(input_path, fmt);
            if (!data.labels) throw std::runtime_error("select-p: label column required");

            std::vector<double> grid =
                grid_text.empty() ? kernmink::default_p_grid() : parse_double_list(grid_text);

            int classes = 0;
            {
                std::vector<int> sorted = *data.labels;
                std::sort(sorted.begin(), sorted.end());
                classes = static_cast<int>(
                    std::unique(sorted.begin(), sorted.end()) - sorted.begin());
            }
            kernmink::RunConfig cfg;
            cfg.k = select_k > 0 ? select_k : classes;
            cfg.max_iter = select_max_iter;
            cfg.restarts = select_restarts;

            json config;
            config["input"] = input_path;
            config["label_column"] = label_column;
            config["kernel"] = kernmink::kernel_json(select_kernel.spec());
            config["map"] = kernmink::map_config_json(select_kernel.map_config());
            config["k"] = cfg.k;
            config["grid"] = grid;
            config["labeled_fraction"] = labeled_frac;
            config["repeats"] = repeats;
            config["weighted"] = select_weighted;
            config["seed"] = select_seed;
            config["max_iter"] = select_max_iter;
            config["restarts"] = select_restarts;

            const auto t0 = std::chrono::steady_clock::now();
            const auto result =
                kernmink::select_p(data, select_kernel.spec(), select_kernel.map_config(), cfg,
                                   grid, labeled_frac, repeats, select_seed, select_weighted);
            const long long total_ms = ms_since(t0);

            json report = kernmink::make_report("select-p", std::move(config));
            report["selection"] = kernmink::selection_json(result);
            report["timing"] = json{{"total_ms", total_ms}};
            emit(report.dump(2), out_path);
            return 0;
        }

        if (*diag_cmd) {
            const auto gen = kernmink::generator_kind_from_string(gen_name);
            const auto p_grid = parse_double_list(p_grid_text);
            const auto d_grid = parse_size_list(d_grid_text);

            json config;
            config["generator"] = gen_name;
            config["p_grid"] = p_grid;
            config["d_grid"] = d_grid;
            config["n"] = diag_n;
            config["seed"] = diag_seed;

            const auto t0 = std::chrono::steady_clock::now();
            const auto result =
                kernmink::concentration_sweep(gen, p_grid, d_grid, diag_n, diag_seed);
            const long long total_ms = ms_since(t0);

            json report = kernmink::make_report("diag", std::move(config));
            report["diagnostics"] = kernmink::diagnostics_json(result);
            report["timing"] = json{{"total_ms", total_ms}};
            emit(report.dump(2), out_path);
            return 0;
        }

        if (*eval_cmd) {
            const auto labels = kernmink::load_int_column(labels_path);
            const auto assignments = kernmink::load_int_column(assignments_path);
            if (labels.size() != assignments.size())
                throw std::runtime_error("eval: labels and assignments differ in length");

            json config;
            config["labels"] = labels_path;
            config["assignments"] = assignments_path;

            json report = kernmink::make_report("eval", std::move(config));
            report["metrics"] =
                kernmink::metrics_json(kernmink::evaluate_clustering(labels, assignments));
            report["timing"] = json{{"total_ms", 0}};
            emit(report.dump(2), out_path);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
