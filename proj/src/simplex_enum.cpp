#include "sparse_nerve/simplex_enum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sparse_nerve/geometry.hpp"

namespace sparse_nerve {

namespace {
constexpr Real kInf = std::numeric_limits<Real>::infinity();
}

bool filtration_less(const FilteredSimplex& a, const FilteredSimplex& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.vertices < b.vertices;
}

std::vector<std::size_t> FilteredComplex::count_by_dim() const {
    std::vector<std::size_t> counts(static_cast<std::size_t>(max_dim) + 1, 0);
    for (const auto& s : simplices) {
        if (s.dim() >= static_cast<int>(counts.size())) counts.resize(s.dim() + 1, 0);
        ++counts[s.dim()];
    }
    return counts;
}

void validate_filtration(const FilteredComplex& fc) {
    std::map<std::vector<Index>, Real> birth_of;
    for (const auto& s : fc.simplices) {
        if (s.vertices.empty()) throw std::invalid_argument("empty simplex");
        if (!std::is_sorted(s.vertices.begin(), s.vertices.end()) ||
            std::adjacent_find(s.vertices.begin(), s.vertices.end()) != s.vertices.end())
            throw std::invalid_argument("simplex vertices must be strictly increasing");
        if (!(s.birth >= 0.0) || !std::isfinite(s.birth))
            throw std::invalid_argument("simplex birth must be finite and nonnegative");
        birth_of[s.vertices] = s.birth;
    }
    if (birth_of.size() != fc.simplices.size())
        throw std::invalid_argument("duplicate simplex in filtration");
    for (std::size_t i = 1; i < fc.simplices.size(); ++i)
        if (filtration_less(fc.simplices[i], fc.simplices[i - 1]))
            throw std::invalid_argument("filtration is not sorted by (birth, dim, vertices)");
    for (const auto& s : fc.simplices) {
        if (s.dim() == 0) continue;
        std::vector<Index> facet(s.vertices.size() - 1);
        for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
            std::size_t w = 0;
            for (std::size_t v = 0; v < s.vertices.size(); ++v)
                if (v != drop) facet[w++] = s.vertices[v];
            auto it = birth_of.find(facet);
            if (it == birth_of.end()) throw std::invalid_argument("facet missing from filtration");
            if (it->second > s.birth)
                throw std::invalid_argument("facet born after its coface");
        }
    }
}

std::string flavor_name(Flavor f) { return f == Flavor::Rips ? "rips" : "cech"; }

Flavor flavor_from_name(const std::string& name) {
    if (name == "rips") return Flavor::Rips;
    if (name == "cech") return Flavor::Cech;
    throw std::invalid_argument("unknown flavor: " + name + " (expected rips or cech)");
}

Real simplex_birth_time_rips(const SparseParams& params, std::span<const GreedyRank> sigma,
                             const SparseEdgeGraph& g) {
    if (sigma.size() == 1) return 0.0;
    Real t = 0.0;
    for (std::size_t a = 0; a < sigma.size(); ++a)
        for (std::size_t b = a + 1; b < sigma.size(); ++b) {
            Real eb = g.birth(sigma[a], sigma[b]);
            if (eb == kInf) return kInf;
            t = std::max(t, eb);
        }
    for (GreedyRank v : sigma)
        if (t > removal_time(params, v)) return kInf;
    return t;
}

namespace {

Real cech_birth(const SparseParams& params, std::span<const GreedyRank> sigma, MetricKind metric) {
    if (sigma.empty()) throw std::invalid_argument("empty simplex");
    if (sigma.size() == 1) return 0.0;

    std::vector<Point> centers;
    centers.reserve(sigma.size());
    Real min_removal = kInf;
    std::vector<Real> caps(sigma.size());
    for (std::size_t a = 0; a < sigma.size(); ++a) {
        auto p = params.rank_point(sigma[a]);
        centers.emplace_back(p.begin(), p.end());
        caps[a] = params.radius_cap(sigma[a]);
        min_removal = std::min(min_removal, removal_time(params, sigma[a]));
    }

    // If the unconstrained enclosing-ball center already satisfies every cap,
    // its radius is the answer: nothing below it is feasible even uncapped.
    Ball mb = metric == MetricKind::L2 ? min_enclosing_ball_l2(centers)
                                       : min_enclosing_ball_linf(centers);
    bool caps_ok = true;
    for (std::size_t a = 0; a < sigma.size(); ++a)
        if (metric_distance(mb.center, centers[a], metric) > caps[a]) {
            caps_ok = false;
            break;
        }
    if (caps_ok) return mb.radius <= min_removal ? mb.radius : kInf;

    auto feasible = [&](Real alpha) {
        std::vector<Real> radii(sigma.size());
        for (std::size_t a = 0; a < sigma.size(); ++a) radii[a] = std::min(alpha, caps[a]);
        return balls_intersect(centers, radii, metric);
    };

    // min_removal is finite: at most one vertex (rank 0) has infinite lambda.
    Real lo = mb.radius, hi = min_removal;
    if (lo > hi || !feasible(hi)) return kInf;
    for (int iter = 0; iter < 200 && hi - lo > 1e-9 * hi; ++iter) {
        Real mid = lo + (hi - lo) / 2.0;
        if (feasible(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace

Real simplex_birth_time_cech_l2(const SparseParams& params, std::span<const GreedyRank> sigma) {
    if (params.cloud().metric() != MetricKind::L2)
        throw std::invalid_argument("cech L2 birth requires an L2 cloud");
    return cech_birth(params, sigma, MetricKind::L2);
}

Real simplex_birth_time_cech_linf(const SparseParams& params, std::span<const GreedyRank> sigma) {
    if (params.cloud().metric() != MetricKind::Linf)
        throw std::invalid_argument("cech Linf birth requires an Linf cloud");
    return cech_birth(params, sigma, MetricKind::Linf);
}

namespace {

int thread_cap() {
    const char* env = std::getenv("SPARSE_NERVE_THREADS");
    if (!env) return 1;
    int v = std::atoi(env);
    return v > 0 ? v : 1;
}

void find_from_vertex(const SparseEdgeGraph& g, GreedyRank v, int k, const BirthFn& birth_fn,
                      std::vector<FilteredSimplex>& out) {
    const auto& candidates = g.out(v);
    if (static_cast<int>(candidates.size()) < k) return;
    std::vector<GreedyRank> chosen;
    chosen.reserve(k);
    // Extend only by vertices adjacent to everything already chosen, so each
    // emitted subset is a clique by construction.
    auto recurse = [&](auto&& self, std::size_t from) -> void {
        if (static_cast<int>(chosen.size()) == k) {
            std::vector<GreedyRank> sigma(chosen);
            sigma.push_back(v);
            std::sort(sigma.begin(), sigma.end());
            Real t = birth_fn(sigma);
            if (t < kInf) out.push_back({std::move(sigma), t});
            return;
        }
        for (std::size_t c = from; c < candidates.size(); ++c) {
            GreedyRank u = candidates[c];
            bool clique = true;
            for (GreedyRank w : chosen)
                if (!g.has_edge(u, w)) {
                    clique = false;
                    break;
                }
            if (!clique) continue;
            chosen.push_back(u);
            self(self, c + 1);
            chosen.pop_back();
        }
    };
    recurse(recurse, 0);
}

}  // namespace

std::vector<FilteredSimplex> find_simplices(const SparseEdgeGraph& g, int k,
                                            const BirthFn& birth_fn) {
    if (k < 2) throw std::invalid_argument("find_simplices handles k >= 2");
    const Index n = g.size();
    std::vector<FilteredSimplex> out;

    int threads = std::min<int>(thread_cap(), std::thread::hardware_concurrency());
    if (threads > 1 && n > 256) {
        std::vector<std::vector<FilteredSimplex>> parts(threads);
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (GreedyRank v = t; v < n; v += threads)
                    find_from_vertex(g, v, k, birth_fn, parts[t]);
            });
        for (auto& th : pool) th.join();
        for (auto& part : parts)
            out.insert(out.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
    } else {
        for (GreedyRank v = 0; v < n; ++v) find_from_vertex(g, v, k, birth_fn, out);
    }

    std::sort(out.begin(), out.end(),
              [](const FilteredSimplex& a, const FilteredSimplex& b) {
                  return a.vertices < b.vertices;
              });
    return out;
}

FilteredComplex build_filtration(const SparseParams& params, int max_dim, Flavor flavor) {
    if (max_dim < 0) throw std::invalid_argument("max_dim must be nonnegative");
    const Index n = params.size();

    FilteredComplex fc;
    fc.max_dim = max_dim;
    for (Index v = 0; v < n; ++v) fc.simplices.push_back({{v}, 0.0});

    if (max_dim >= 1 && n >= 2) {
        SparseEdgeGraph g = construct_edges(params);
        for (const auto& e : g.edges()) {
            std::vector<Index> vs{e.src, e.dst};
            std::sort(vs.begin(), vs.end());
            fc.simplices.push_back({std::move(vs), e.birth});
        }
        if (max_dim >= 2) {
            BirthFn birth_fn;
            if (flavor == Flavor::Rips) {
                birth_fn = [&](std::span<const GreedyRank> sigma) {
                    return simplex_birth_time_rips(params, sigma, g);
                };
            } else if (params.cloud().metric() == MetricKind::L2) {
                birth_fn = [&](std::span<const GreedyRank> sigma) {
                    return simplex_birth_time_cech_l2(params, sigma);
                };
            } else if (params.cloud().metric() == MetricKind::Linf) {
                birth_fn = [&](std::span<const GreedyRank> sigma) {
                    return simplex_birth_time_cech_linf(params, sigma);
                };
            } else {
                throw std::invalid_argument(
                    "cech flavor supports l2 and linf clouds only; use rips for l1");
            }
            for (int k = 2; k <= max_dim; ++k) {
                auto found = find_simplices(g, k, birth_fn);
                fc.simplices.insert(fc.simplices.end(), std::make_move_iterator(found.begin()),
                                    std::make_move_iterator(found.end()));
            }
        }
    }

    // Monotonicity repair: numerical birth functions may undershoot a facet
    // birth by float noise; raise within 1e-9, anything larger is a bug.
    // Facets are repaired before their cofaces (ascending dimension).
    std::sort(fc.simplices.begin(), fc.simplices.end(),
              [](const FilteredSimplex& a, const FilteredSimplex& b) {
                  return a.vertices.size() < b.vertices.size();
              });
    std::map<std::vector<Index>, std::size_t> index_of;
    for (std::size_t i = 0; i < fc.simplices.size(); ++i) index_of[fc.simplices[i].vertices] = i;
    for (auto& s : fc.simplices) {
        if (s.dim() == 0) continue;
        std::vector<Index> facet(s.vertices.size() - 1);
        for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
            std::size_t w = 0;
            for (std::size_t v = 0; v < s.vertices.size(); ++v)
                if (v != drop) facet[w++] = s.vertices[v];
            auto it = index_of.find(facet);
            if (it == index_of.end()) throw std::logic_error("facet missing while assembling");
            Real fb = fc.simplices[it->second].birth;
            if (fb > s.birth) {
                if (fb - s.birth > 1e-9)
                    throw std::logic_error("birth function violated monotonicity beyond tolerance");
                s.birth = fb;
            }
        }
    }

    std::sort(fc.simplices.begin(), fc.simplices.end(), filtration_less);
    validate_filtration(fc);
    return fc;
}

FilteredComplex relabel_vertices(const FilteredComplex& fc, const std::vector<Index>& mapping) {
    FilteredComplex out;
    out.max_dim = fc.max_dim;
    out.simplices.reserve(fc.simplices.size());
    for (const auto& s : fc.simplices) {
        FilteredSimplex t;
        t.birth = s.birth;
        t.vertices.reserve(s.vertices.size());
        for (Index v : s.vertices) t.vertices.push_back(mapping.at(v));
        std::sort(t.vertices.begin(), t.vertices.end());
        out.simplices.push_back(std::move(t));
    }
    std::sort(out.simplices.begin(), out.simplices.end(), filtration_less);
    return out;
}

std::string format_filtration(const FilteredComplex& fc) {
    std::ostringstream out;
    char num[64];
    for (const auto& s : fc.simplices) {
        std::snprintf(num, sizeof num, "%.17g", s.birth);
        out << num << ' ' << s.dim();
        for (Index v : s.vertices) out << ' ' << v;
        out << '\n';
    }
    return out.str();
}

FilteredComplex parse_filtration(const std::string& text) {
    FilteredComplex fc;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream row(line);
        FilteredSimplex s;
        int dim;
        if (!(row >> s.birth >> dim) || dim < 0)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": bad simplex header");
        s.vertices.resize(dim + 1);
        for (auto& v : s.vertices)
            if (!(row >> v))
                throw std::invalid_argument("line " + std::to_string(lineno) + ": missing vertex");
        fc.simplices.push_back(std::move(s));
    }
    for (const auto& s : fc.simplices) fc.max_dim = std::max(fc.max_dim, s.dim());
    validate_filtration(fc);
    return fc;
}

}  // namespace sparse_nerve
