// sparse-nerve: build sparse Cech/Rips filtrations from point clouds, compute
// persistence barcodes, and verify them against brute-force full filtrations.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sparse_nerve/collapse.hpp"
#include "sparse_nerve/generators.hpp"
#include "sparse_nerve/greedy.hpp"
#include "sparse_nerve/metric.hpp"
#include "sparse_nerve/neighbor_graph.hpp"
#include "sparse_nerve/persistence.hpp"
#include "sparse_nerve/simplex_enum.hpp"
#include "sparse_nerve/sparse_balls.hpp"

namespace sn = sparse_nerve;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

struct CommonOpts {
    std::string input;
    std::string output;
    std::string metric = "l2";
    std::string flavor = "rips";
    std::string mode = "strict";
    double epsilon = 0.5;
    int max_dim = 2;
    int seed_index = 0;
    bool allow_large_epsilon = false;
};

void add_metric_flag(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--metric", o.metric, "point metric: l2, l1, linf")
        ->check(CLI::IsMember({"l2", "l1", "linf"}));
}

void add_epsilon_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--epsilon", o.epsilon, "sparsity constant (0 < eps < 1)");
    cmd->add_flag("--allow-large-epsilon", o.allow_large_epsilon,
                  "accept epsilon >= 1 (the formulas stay well-defined)");
    cmd->add_option("--mode", o.mode, "edge birth mode: strict or paper")
        ->check(CLI::IsMember({"strict", "paper"}));
    cmd->add_option("--seed-point", o.seed_index, "index of the first greedy point");
}

void check_epsilon(const CommonOpts& o) {
    if (o.epsilon <= 0.0) throw CLI::ValidationError("--epsilon must be positive");
    if (o.epsilon >= 1.0 && !o.allow_large_epsilon)
        throw CLI::ValidationError("--epsilon >= 1 needs --allow-large-epsilon");
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot open " + path + " for writing");
    f << text;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

sn::BirthMode mode_of(const CommonOpts& o) {
    return o.mode == "paper" ? sn::BirthMode::PaperLiteral : sn::BirthMode::Strict;
}

struct Pipeline {
    sn::PointCloud cloud;
    sn::GreedyPermutation gp;
    sn::SparseParams params;

    Pipeline(sn::PointCloud c, const CommonOpts& o)
        : cloud(std::move(c)),
          gp(sn::greedy_permutation(cloud, o.seed_index)),
          params(cloud, gp, o.epsilon, mode_of(o)) {}
};

std::string fmt_real(double x) {
    char num[64];
    std::snprintf(num, sizeof num, "%.17g", x);
    return num;
}

int cmd_gen(const std::string& kind, sn::Index n, int dim, double noise, int clusters,
            double spread, std::uint64_t seed, const CommonOpts& o) {
    sn::MetricKind metric = sn::metric_from_name(o.metric);
    sn::PointCloud cloud = [&] {
        if (kind == "uniform") return sn::gen_uniform_box(n, dim, seed, metric);
        if (kind == "circle") return sn::gen_noisy_circle(n, noise, seed, metric);
        if (kind == "sphere") return sn::gen_noisy_sphere(n, noise, seed, metric);
        return sn::gen_clustered(n, clusters, spread, seed, metric);
    }();
    write_output(o.output, sn::format_points(cloud));
    return kExitOk;
}

int cmd_greedy(const CommonOpts& o) {
    auto cloud = sn::parse_points(read_input(o.input), sn::metric_from_name(o.metric));
    auto gp = sn::greedy_permutation(cloud, o.seed_index);
    write_output(o.output, sn::format_permutation(gp));
    return kExitOk;
}

int cmd_edges(const CommonOpts& o) {
    check_epsilon(o);
    Pipeline p(sn::parse_points(read_input(o.input), sn::metric_from_name(o.metric)), o);
    auto g = sn::construct_edges(p.params);

    struct Row {
        sn::Index i, j;
        double birth;
    };
    std::vector<Row> rows;
    for (const auto& e : g.edges()) {
        sn::Index a = p.gp.order[e.src], b = p.gp.order[e.dst];
        rows.push_back({std::min(a, b), std::max(a, b), e.birth});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(a.birth, a.i, a.j) < std::tie(b.birth, b.i, b.j);
    });
    std::ostringstream out;
    for (const auto& r : rows) out << r.i << ' ' << r.j << ' ' << fmt_real(r.birth) << '\n';
    write_output(o.output, out.str());
    return kExitOk;
}

int cmd_build(const CommonOpts& o) {
    check_epsilon(o);
    Pipeline p(sn::parse_points(read_input(o.input), sn::metric_from_name(o.metric)), o);
    auto fc = sn::build_filtration(p.params, o.max_dim, sn::flavor_from_name(o.flavor));
    write_output(o.output, sn::format_filtration(sn::relabel_vertices(fc, p.gp.order)));
    return kExitOk;
}

int cmd_persist(const CommonOpts& o, const std::string& filtration_path) {
    sn::FilteredComplex fc;
    if (!filtration_path.empty()) {
        fc = sn::parse_filtration(read_input(filtration_path));
    } else {
        check_epsilon(o);
        Pipeline p(sn::parse_points(read_input(o.input), sn::metric_from_name(o.metric)), o);
        fc = sn::relabel_vertices(sn::build_filtration(p.params, o.max_dim,
                                                       sn::flavor_from_name(o.flavor)),
                                  p.gp.order);
    }
    auto bc = sn::compute_barcode(fc);
    if (bc.zero_length_pairs > 0)
        std::cerr << "note: dropped " << bc.zero_length_pairs << " zero-length pairs\n";
    write_output(o.output, sn::format_barcode(bc));
    return kExitOk;
}

int cmd_compare(const CommonOpts& o, double alpha_max, double factor, bool all_dims,
                bool min_ratio) {
    check_epsilon(o);
    sn::MetricKind metric = sn::metric_from_name(o.metric);
    sn::Flavor flavor = sn::flavor_from_name(o.flavor);
    if (flavor == sn::Flavor::Cech && metric == sn::MetricKind::L1)
        throw CLI::ValidationError("cech flavor supports l2 and linf only");

    Pipeline p(sn::parse_points(read_input(o.input), metric), o);
    auto sparse_fc = sn::build_filtration(p.params, o.max_dim, flavor);

    double amax = alpha_max > 0 ? alpha_max : p.cloud.diameter();
    sn::FilteredComplex full_fc = (flavor == sn::Flavor::Cech && metric == sn::MetricKind::L2)
                                      ? sn::full_cech_filtration_l2(p.cloud, o.max_dim, amax)
                                      : sn::full_rips_filtration(p.cloud, o.max_dim, amax);

    auto sparse_bc = sn::compute_barcode(sparse_fc);
    auto full_bc = sn::compute_barcode(full_fc);

    double c = factor > 0 ? factor : (1.0 + o.epsilon) * (1.0 + 1e-6);
    // truncating at max_dim makes homology honest only below it
    std::vector<int> dims;
    if (!all_dims)
        for (int d = 0; d < o.max_dim; ++d) dims.push_back(d);
    auto result = sn::barcode_approx_check(sparse_bc, full_bc, c, dims);

    std::ostringstream out;
    auto sc = sparse_fc.count_by_dim();
    auto fc = full_fc.count_by_dim();
    out << "simplex counts (sparse vs full, alpha_max " << fmt_real(amax) << "):\n";
    for (std::size_t d = 0; d < std::max(sc.size(), fc.size()); ++d) {
        std::size_t a = d < sc.size() ? sc[d] : 0;
        std::size_t b = d < fc.size() ? fc[d] : 0;
        out << "  dim " << d << ": " << a << " vs " << b << '\n';
    }
    out << "barcode check at c = " << fmt_real(c) << ": " << (result.ok ? "ok" : "FAILED") << '\n';
    out << "  matched " << result.matched.size() << ", short unmatched "
        << result.unmatched_ok.size() << ", worst ratio " << fmt_real(result.worst_ratio) << '\n';
    if (!result.ok) out << "  " << result.detail << '\n';
    if (min_ratio)
        out << "  minimal passing factor: " << fmt_real(sn::barcode_min_ratio(sparse_bc, full_bc, dims))
            << '\n';
    write_output(o.output, out.str());
    return result.ok ? kExitOk : kExitVerifyFail;
}

int cmd_check_covering(const CommonOpts& o, int samples, std::uint64_t seed) {
    check_epsilon(o);
    sn::MetricKind metric = sn::metric_from_name(o.metric);
    Pipeline p(sn::parse_points(read_input(o.input), metric), o);
    const auto& params = p.params;
    sn::Rng rng(seed);

    auto sample_dir = [&](sn::Point& dir) {
        double norm = 0.0;
        while (norm == 0.0) {
            for (auto& c : dir) c = rng.uniform(-1.0, 1.0);
            norm = sn::metric_distance(dir, sn::Point(dir.size(), 0.0), metric);
        }
        for (auto& c : dir) c /= norm;
    };
    auto in_ball = [&](sn::GreedyRank i, const sn::Point& x, double alpha) {
        double r = sn::ball_radius_or_empty(params, i, alpha);
        if (r == sn::kEmptyBallRadius) return false;
        return params.rank_distance_to(i, x) <= r * (1 + 1e-12) + 1e-12;
    };

    double spread = p.cloud.diameter();
    int fails1 = 0, fails2 = 0, done = 0;
    sn::Point dir(p.cloud.dim());
    while (done < samples) {
        sn::GreedyRank j = rng.next_u64() % p.cloud.size();
        double alpha = rng.uniform(0.0, spread);
        double r = sn::ball_radius_or_empty(params, j, alpha);
        if (r != sn::kEmptyBallRadius) {
            double beta = alpha + rng.uniform(0.0, spread);
            sample_dir(dir);
            double frac = rng.uniform();
            sn::Point x(p.cloud.dim());
            auto center = params.rank_point(j);
            for (int k = 0; k < p.cloud.dim(); ++k) x[k] = center[k] + dir[k] * r * frac;
            if (!in_ball(sn::covering_witness(params, j, beta), x, beta)) ++fails1;
        }
        double alpha2 = rng.uniform(0.0, spread);
        double beta2 = (1.0 + params.epsilon()) * alpha2 * (1.0 + rng.uniform());
        sample_dir(dir);
        double frac = rng.uniform();
        sn::Point x2(p.cloud.dim());
        auto center = params.rank_point(j);
        for (int k = 0; k < p.cloud.dim(); ++k) x2[k] = center[k] + dir[k] * alpha2 * frac;
        if (!in_ball(sn::covering_witness(params, j, beta2), x2, beta2)) ++fails2;
        ++done;
    }

    std::ostringstream out;
    out << "covering lemma sampling over " << samples << " instances\n";
    out << "  clause 1 violations: " << fails1 << '\n';
    out << "  clause 2 violations: " << fails2 << '\n';
    write_output(o.output, out.str());
    return (fails1 == 0 && fails2 == 0) ? kExitOk : kExitVerifyFail;
}

int cmd_collapse_check(const CommonOpts& o) {
    check_epsilon(o);
    sn::MetricKind metric = sn::metric_from_name(o.metric);
    Pipeline p(sn::parse_points(read_input(o.input), metric), o);
    if (p.cloud.size() < 2) throw CLI::ValidationError("need at least two points");

    sn::GreedyRank last = p.params.size() - 1;
    sn::GreedyRank partner = sn::find_collapse_partner(p.params);
    double alpha = sn::removal_time(p.params, last);

    auto fc = sn::build_filtration(p.params, o.max_dim, sn::flavor_from_name(o.flavor));
    auto K = sn::complex_at_scale(fc, alpha);
    std::vector<sn::Index> edge{std::min(last, partner), std::max(last, partner)};
    bool has_edge = K.contains(edge);
    bool cond = has_edge && sn::satisfies_link_condition_within(K, last, partner, o.max_dim);

    std::ostringstream out;
    out << "last vertex: rank " << last << " (original index " << p.gp.order[last] << ")\n";
    out << "collapse partner: rank " << partner << " (original index " << p.gp.order[partner]
        << ")\n";
    out << "scale alpha = " << fmt_real(alpha) << ", complex size " << K.size() << '\n';
    out << "edge present: " << (has_edge ? "yes" : "NO") << '\n';
    out << "link condition (joins up to dim " << o.max_dim
        << "): " << (cond ? "satisfied" : "VIOLATED") << '\n';
    if (cond) {
        auto before = sn::betti_numbers(K, std::min(o.max_dim - 1, 2));
        auto after =
            sn::betti_numbers(sn::contract_edge(K, last, partner), std::min(o.max_dim - 1, 2));
        out << "betti before:";
        for (auto b : before) out << ' ' << b;
        out << "\nbetti after: ";
        for (auto b : after) out << ' ' << b;
        out << '\n';
        cond = before == after;
        out << "contraction preserves betti: " << (cond ? "yes" : "NO") << '\n';
    }
    write_output(o.output, out.str());
    return cond ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse nerve filtrations: construction, persistence, verification"};
    app.require_subcommand(1);

    CommonOpts o;

    // gen
    auto* gen = app.add_subcommand("gen", "generate a sample point cloud");
    std::string gen_kind = "uniform";
    sn::Index gen_n = 100;
    int gen_dim = 2, gen_clusters = 4;
    double gen_noise = 0.1, gen_spread = 0.02;
    std::uint64_t gen_seed = 1;
    gen->add_option("kind", gen_kind, "uniform, circle, sphere, clustered")
        ->check(CLI::IsMember({"uniform", "circle", "sphere", "clustered"}));
    gen->add_option("--n", gen_n, "number of points");
    gen->add_option("--dim", gen_dim, "dimension (uniform only)");
    gen->add_option("--noise", gen_noise, "radial noise (circle and sphere)");
    gen->add_option("--clusters", gen_clusters, "cluster count (clustered only)");
    gen->add_option("--spread", gen_spread, "cluster spread (clustered only)");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--output,-o", o.output, "output path (default stdout)");
    add_metric_flag(gen, o);

    // greedy
    auto* greedy = app.add_subcommand("greedy", "emit the greedy permutation");
    greedy->add_option("input", o.input, "points file ('-' for stdin)")->required();
    greedy->add_option("--output,-o", o.output, "output path");
    greedy->add_option("--seed-point", o.seed_index, "index of the first greedy point");
    add_metric_flag(greedy, o);

    // edges
    auto* edges = app.add_subcommand("edges", "emit sparse filtration edges");
    edges->add_option("input", o.input, "points file")->required();
    edges->add_option("--output,-o", o.output, "output path");
    add_metric_flag(edges, o);
    add_epsilon_flags(edges, o);

    // build
    auto* build = app.add_subcommand("build", "emit the sparse filtration");
    build->add_option("input", o.input, "points file")->required();
    build->add_option("--output,-o", o.output, "output path");
    build->add_option("--max-dim", o.max_dim, "highest simplex dimension");
    build->add_option("--flavor", o.flavor, "rips or cech")
        ->check(CLI::IsMember({"rips", "cech"}));
    add_metric_flag(build, o);
    add_epsilon_flags(build, o);

    // persist
    auto* persist = app.add_subcommand("persist", "compute a persistence barcode");
    std::string filtration_path;
    persist->add_option("input", o.input, "points file (pipeline mode)");
    persist->add_option("--filtration", filtration_path, "precomputed filtration file");
    persist->add_option("--output,-o", o.output, "output path");
    persist->add_option("--max-dim", o.max_dim, "highest simplex dimension");
    persist->add_option("--flavor", o.flavor, "rips or cech")
        ->check(CLI::IsMember({"rips", "cech"}));
    add_metric_flag(persist, o);
    add_epsilon_flags(persist, o);

    // compare
    auto* compare = app.add_subcommand(
        "compare", "sparse vs full barcodes with the approximation guarantee");
    double alpha_max = 0.0, factor = 0.0;
    bool all_dims = false, min_ratio = false;
    compare->add_option("input", o.input, "points file")->required();
    compare->add_option("--output,-o", o.output, "output path");
    compare->add_option("--max-dim", o.max_dim, "highest simplex dimension");
    compare->add_option("--flavor", o.flavor, "rips or cech")
        ->check(CLI::IsMember({"rips", "cech"}));
    compare->add_option("--alpha-max", alpha_max, "full-oracle cutoff (default: cloud diameter)");
    compare->add_option("--factor", factor, "approximation factor (default (1+eps)(1+1e-6))");
    compare->add_flag("--all-dims", all_dims,
                      "compare every dimension, including the truncation artifacts at max-dim");
    compare->add_flag("--min-ratio", min_ratio,
                      "also search for the smallest passing approximation factor");
    add_metric_flag(compare, o);
    add_epsilon_flags(compare, o);

    // check-covering
    auto* cover = app.add_subcommand("check-covering", "sample the covering lemma clauses");
    int samples = 10000;
    std::uint64_t cover_seed = 1;
    cover->add_option("input", o.input, "points file")->required();
    cover->add_option("--samples", samples, "sample count");
    cover->add_option("--seed", cover_seed, "sampling seed");
    cover->add_option("--output,-o", o.output, "output path");
    add_metric_flag(cover, o);
    add_epsilon_flags(cover, o);

    // collapse-check
    auto* collapse = app.add_subcommand(
        "collapse-check", "link condition for the last vertex's collapse edge");
    collapse->add_option("input", o.input, "points file")->required();
    collapse->add_option("--output,-o", o.output, "output path");
    collapse->add_option("--max-dim", o.max_dim, "complex dimension to materialize");
    collapse->add_option("--flavor", o.flavor, "rips or cech")
        ->check(CLI::IsMember({"rips", "cech"}));
    add_metric_flag(collapse, o);
    add_epsilon_flags(collapse, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_gen(gen_kind, gen_n, gen_dim, gen_noise, gen_clusters, gen_spread,
                           gen_seed, o);
        if (greedy->parsed()) return cmd_greedy(o);
        if (edges->parsed()) return cmd_edges(o);
        if (build->parsed()) return cmd_build(o);
        if (persist->parsed()) {
            if (filtration_path.empty() && o.input.empty())
                throw CLI::ValidationError("persist needs a points file or --filtration");
            return cmd_persist(o, filtration_path);
        }
        if (compare->parsed()) return cmd_compare(o, alpha_max, factor, all_dims, min_ratio);
        if (cover->parsed()) return cmd_check_covering(o, samples, cover_seed);
        if (collapse->parsed()) return cmd_collapse_check(o);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
