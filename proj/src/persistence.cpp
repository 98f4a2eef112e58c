#include "sparse_nerve/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sparse_nerve/geometry.hpp"

namespace sparse_nerve {

namespace {
constexpr Real kInf = std::numeric_limits<Real>::infinity();

bool interval_less(const BarcodeInterval& a, const BarcodeInterval& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
}
}  // namespace

std::vector<BarcodeInterval> Barcode::in_dim(int dim) const {
    std::vector<BarcodeInterval> out;
    for (const auto& iv : intervals)
        if (iv.dim == dim) out.push_back(iv);
    return out;
}

Barcode compute_barcode(const FilteredComplex& fc) {
    validate_filtration(fc);
    const std::size_t m = fc.simplices.size();

    std::map<std::vector<Index>, std::size_t> index_of;
    for (std::size_t i = 0; i < m; ++i) index_of[fc.simplices[i].vertices] = i;

    // Boundary columns, rows sorted ascending so the pivot is the back.
    std::vector<std::vector<std::size_t>> columns(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& s = fc.simplices[i];
        if (s.dim() == 0) continue;
        std::vector<Index> facet(s.vertices.size() - 1);
        for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
            std::size_t w = 0;
            for (std::size_t v = 0; v < s.vertices.size(); ++v)
                if (v != drop) facet[w++] = s.vertices[v];
            columns[i].push_back(index_of.at(facet));
        }
        std::sort(columns[i].begin(), columns[i].end());
    }

    std::vector<std::size_t> pivot_owner(m, m);  // m = none
    std::vector<std::size_t> killer(m, m);
    std::vector<char> is_killer(m, 0);

    std::vector<std::size_t> merged;
    for (std::size_t j = 0; j < m; ++j) {
        auto& col = columns[j];
        while (!col.empty()) {
            std::size_t low = col.back();
            std::size_t other = pivot_owner[low];
            if (other == m) break;
            // add the column with the same pivot (GF(2) symmetric difference)
            merged.clear();
            std::set_symmetric_difference(col.begin(), col.end(), columns[other].begin(),
                                          columns[other].end(), std::back_inserter(merged));
            col.swap(merged);
        }
        if (!col.empty()) {
            std::size_t low = col.back();
            pivot_owner[low] = j;
            killer[low] = j;
            is_killer[j] = 1;
        }
    }

    Barcode bc;
    for (std::size_t i = 0; i < m; ++i) {
        if (is_killer[i]) continue;  // a destroyer never creates a class
        if (killer[i] != m) {
            Real birth = fc.simplices[i].birth;
            Real death = fc.simplices[killer[i]].birth;
            if (birth == death) {
                ++bc.zero_length_pairs;
                continue;
            }
            bc.intervals.push_back({fc.simplices[i].dim(), birth, death});
        } else {
            bc.intervals.push_back({fc.simplices[i].dim(), fc.simplices[i].birth, kInf});
        }
    }
    std::sort(bc.intervals.begin(), bc.intervals.end(), interval_less);
    return bc;
}

namespace {

// Depth-first subset growth with a monotone birth bound: supersets can only
// be born later, so branches past alpha_max are cut.
template <typename BirthOf>
void enumerate_full(const PointCloud& cloud, int max_dim, Real alpha_max, const BirthOf& birth_of,
                    FilteredComplex& fc) {
    const Index n = cloud.size();
    std::vector<Index> current;
    auto recurse = [&](auto&& self, Index from) -> void {
        for (Index v = from; v < n; ++v) {
            current.push_back(v);
            Real birth = birth_of(current);
            if (birth <= alpha_max) {
                fc.simplices.push_back({current, birth});
                if (static_cast<int>(current.size()) <= max_dim) self(self, v + 1);
            }
            current.pop_back();
        }
    };
    recurse(recurse, 0);
    fc.max_dim = max_dim;
    std::sort(fc.simplices.begin(), fc.simplices.end(), filtration_less);
}

}  // namespace

FilteredComplex full_rips_filtration(const PointCloud& cloud, int max_dim, Real alpha_max) {
    if (max_dim < 0) throw std::invalid_argument("max_dim must be nonnegative");
    FilteredComplex fc;
    enumerate_full(
        cloud, max_dim, alpha_max,
        [&](const std::vector<Index>& sigma) {
            Real diam = 0.0;
            for (std::size_t a = 0; a < sigma.size(); ++a)
                for (std::size_t b = a + 1; b < sigma.size(); ++b)
                    diam = std::max(diam, cloud.distance(sigma[a], sigma[b]));
            return diam / 2.0;
        },
        fc);
    validate_filtration(fc);
    return fc;
}

FilteredComplex full_cech_filtration_l2(const PointCloud& cloud, int max_dim, Real alpha_max) {
    if (max_dim < 0) throw std::invalid_argument("max_dim must be nonnegative");
    if (cloud.metric() != MetricKind::L2)
        throw std::invalid_argument("full cech oracle requires an L2 cloud");
    FilteredComplex fc;
    enumerate_full(
        cloud, max_dim, alpha_max,
        [&](const std::vector<Index>& sigma) {
            std::vector<Point> pts;
            pts.reserve(sigma.size());
            for (Index v : sigma) pts.push_back(cloud.point_copy(v));
            return min_enclosing_ball_l2(pts).radius;
        },
        fc);
    // Enclosing-ball radii of nested sets can disagree by float noise; nudge
    // facet order violations within tolerance.
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
            if (it != index_of.end() && fc.simplices[it->second].birth > s.birth) {
                if (fc.simplices[it->second].birth - s.birth > 1e-9)
                    throw std::logic_error("enclosing ball monotonicity violated");
                s.birth = fc.simplices[it->second].birth;
            }
        }
    }
    std::sort(fc.simplices.begin(), fc.simplices.end(), filtration_less);
    validate_filtration(fc);
    return fc;
}

namespace {

constexpr Real kZeroSlack = 1e-9;

bool scalar_admissible(Real x, Real y, Real c) {
    bool xi = !std::isfinite(x), yi = !std::isfinite(y);
    if (xi || yi) return xi && yi;  // inf matches only inf (ratio 1)
    Real lo = std::min(x, y), hi = std::max(x, y);
    return hi <= c * lo + kZeroSlack;
}

Real scalar_ratio(Real x, Real y) {
    bool xi = !std::isfinite(x), yi = !std::isfinite(y);
    if (xi && yi) return 1.0;
    if (xi || yi) return kInf;
    Real lo = std::min(x, y), hi = std::max(x, y);
    if (hi <= kZeroSlack) return 1.0;
    if (lo <= 0.0) return kInf;
    return hi / lo;
}

bool pair_admissible(const BarcodeInterval& a, const BarcodeInterval& b, Real c) {
    return scalar_admissible(a.birth, b.birth, c) && scalar_admissible(a.death, b.death, c);
}

Real pair_ratio(const BarcodeInterval& a, const BarcodeInterval& b) {
    return std::max(scalar_ratio(a.birth, b.birth), scalar_ratio(a.death, b.death));
}

// A bar is long (must be matched) when its own death/birth ratio exceeds c.
bool is_long(const BarcodeInterval& iv, Real c) { return !scalar_admissible(iv.birth, iv.death, c); }

// One matching, grown by augmenting paths from either side. Augmentation
// never uncovers a matched vertex, so covering the long left bars first and
// then the long right bars realizes a matching covering both whenever one
// exists (the alternating-path argument behind Mendelsohn-Dulmage).
struct BiMatcher {
    std::vector<std::vector<int>> ladj, radj;
    std::vector<int> ml, mr;
    std::vector<char> seen_l, seen_r;

    BiMatcher(std::vector<std::vector<int>> adj, int n_right)
        : ladj(std::move(adj)), radj(n_right), ml(ladj.size(), -1), mr(n_right, -1) {
        for (std::size_t a = 0; a < ladj.size(); ++a)
            for (int b : ladj[a]) radj[b].push_back(static_cast<int>(a));
    }

    bool augment_left(int a) {
        for (int b : ladj[a]) {
            if (seen_r[b]) continue;
            seen_r[b] = 1;
            if (mr[b] == -1 || augment_left(mr[b])) {
                ml[a] = b;
                mr[b] = a;
                return true;
            }
        }
        return false;
    }

    bool augment_right(int b) {
        for (int a : radj[b]) {
            if (seen_l[a]) continue;
            seen_l[a] = 1;
            if (ml[a] == -1 || augment_right(ml[a])) {
                ml[a] = b;
                mr[b] = a;
                return true;
            }
        }
        return false;
    }

    void cover_left(int a) {
        if (ml[a] != -1) return;
        seen_r.assign(mr.size(), 0);
        augment_left(a);
    }
    void cover_right(int b) {
        if (mr[b] != -1) return;
        seen_l.assign(ml.size(), 0);
        augment_right(b);
    }
};

std::vector<int> dims_present(const Barcode& b1, const Barcode& b2) {
    std::set<int> dims;
    for (const auto& iv : b1.intervals) dims.insert(iv.dim);
    for (const auto& iv : b2.intervals) dims.insert(iv.dim);
    return {dims.begin(), dims.end()};
}

}  // namespace

MatchResult barcode_approx_check(const Barcode& b1, const Barcode& b2, Real c,
                                 const std::vector<int>& compare_dims) {
    if (c < 1.0) throw std::invalid_argument("approximation factor must be at least 1");
    MatchResult result;
    result.ok = true;

    std::vector<int> dims = compare_dims.empty() ? dims_present(b1, b2) : compare_dims;
    for (int dim : dims) {
        auto left = b1.in_dim(dim);
        auto right = b2.in_dim(dim);

        std::vector<std::vector<int>> adj(left.size());
        for (std::size_t a = 0; a < left.size(); ++a)
            for (std::size_t b = 0; b < right.size(); ++b)
                if (pair_admissible(left[a], right[b], c)) adj[a].push_back(static_cast<int>(b));

        BiMatcher matcher(std::move(adj), static_cast<int>(right.size()));
        for (std::size_t a = 0; a < left.size(); ++a)
            if (is_long(left[a], c)) matcher.cover_left(static_cast<int>(a));
        for (std::size_t b = 0; b < right.size(); ++b)
            if (is_long(right[b], c)) matcher.cover_right(static_cast<int>(b));

        bool dim_ok = true;
        for (std::size_t a = 0; a < left.size(); ++a)
            if (is_long(left[a], c) && matcher.ml[a] == -1) dim_ok = false;
        for (std::size_t b = 0; b < right.size(); ++b)
            if (is_long(right[b], c) && matcher.mr[b] == -1) dim_ok = false;
        if (!dim_ok) {
            result.ok = false;
            result.detail += "dim " + std::to_string(dim) + ": unmatched long bar; ";
        }

        for (std::size_t a = 0; a < left.size(); ++a) {
            if (matcher.ml[a] != -1) {
                const auto& rb = right[matcher.ml[a]];
                result.matched.emplace_back(left[a], rb);
                result.worst_ratio = std::max(result.worst_ratio, pair_ratio(left[a], rb));
            } else if (!is_long(left[a], c)) {
                result.unmatched_ok.push_back(left[a]);
            }
        }
        for (std::size_t b = 0; b < right.size(); ++b)
            if (matcher.mr[b] == -1 && !is_long(right[b], c))
                result.unmatched_ok.push_back(right[b]);
    }
    return result;
}

Real barcode_min_ratio(const Barcode& b1, const Barcode& b2, const std::vector<int>& compare_dims) {
    std::set<Real> candidates{1.0};
    auto add_bar_ratios = [&](const Barcode& bc) {
        for (const auto& iv : bc.intervals) {
            Real r = scalar_ratio(iv.birth, iv.death);
            if (std::isfinite(r)) candidates.insert(r);
        }
    };
    add_bar_ratios(b1);
    add_bar_ratios(b2);
    for (const auto& a : b1.intervals)
        for (const auto& b : b2.intervals) {
            if (a.dim != b.dim) continue;
            Real r = pair_ratio(a, b);
            if (std::isfinite(r)) candidates.insert(r);
        }

    std::vector<Real> cs(candidates.begin(), candidates.end());
    if (!barcode_approx_check(b1, b2, cs.back(), compare_dims).ok) return kInf;
    // smallest candidate c that passes; feasibility is monotone in c
    std::size_t lo = 0, hi = cs.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (barcode_approx_check(b1, b2, cs[mid], compare_dims).ok)
            hi = mid;
        else
            lo = mid + 1;
    }
    return cs[hi];
}

std::size_t gf2_rank(std::vector<std::vector<std::uint64_t>> rows) {
    std::size_t rank = 0;
    if (rows.empty()) return 0;
    const std::size_t words = rows[0].size();
    for (std::size_t word = 0; word < words; ++word) {
        for (int bit = 0; bit < 64; ++bit) {
            std::uint64_t mask = std::uint64_t{1} << bit;
            std::size_t piv = rank;
            while (piv < rows.size() && !(rows[piv][word] & mask)) ++piv;
            if (piv == rows.size()) continue;
            std::swap(rows[piv], rows[rank]);
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (r != rank && (rows[r][word] & mask))
                    for (std::size_t w = 0; w < words; ++w) rows[r][w] ^= rows[rank][w];
            }
            ++rank;
            if (rank == rows.size()) return rank;
        }
    }
    return rank;
}

std::vector<std::size_t> betti_numbers_at(const FilteredComplex& fc, Real alpha, int max_hom_dim) {
    // Simplices of the sublevel complex, grouped by dimension.
    std::vector<std::vector<std::vector<Index>>> by_dim(max_hom_dim + 2);
    std::vector<std::map<std::vector<Index>, std::size_t>> pos(max_hom_dim + 2);
    for (const auto& s : fc.simplices) {
        if (s.birth > alpha || s.dim() > max_hom_dim + 1) continue;
        pos[s.dim()][s.vertices] = by_dim[s.dim()].size();
        by_dim[s.dim()].push_back(s.vertices);
    }

    // rank of the boundary operator d_k: C_k -> C_{k-1}
    auto boundary_rank = [&](int k) -> std::size_t {
        if (k <= 0 || by_dim[k].empty() || by_dim[k - 1].empty()) return 0;
        const std::size_t cols = by_dim[k - 1].size();
        const std::size_t words = (cols + 63) / 64;
        std::vector<std::vector<std::uint64_t>> rows;
        rows.reserve(by_dim[k].size());
        for (const auto& simplex : by_dim[k]) {
            std::vector<std::uint64_t> row(words, 0);
            std::vector<Index> facet(simplex.size() - 1);
            for (std::size_t drop = 0; drop < simplex.size(); ++drop) {
                std::size_t w = 0;
                for (std::size_t v = 0; v < simplex.size(); ++v)
                    if (v != drop) facet[w++] = simplex[v];
                std::size_t c = pos[k - 1].at(facet);
                row[c / 64] |= std::uint64_t{1} << (c % 64);
            }
            rows.push_back(std::move(row));
        }
        return gf2_rank(std::move(rows));
    };

    std::vector<std::size_t> betti(max_hom_dim + 1, 0);
    for (int k = 0; k <= max_hom_dim; ++k) {
        std::size_t nk = by_dim[k].size();
        std::size_t rk = boundary_rank(k);
        std::size_t rk1 = boundary_rank(k + 1);
        betti[k] = nk - rk - rk1;
    }
    return betti;
}

std::string format_barcode(const Barcode& bc) {
    std::ostringstream out;
    char num[64];
    for (const auto& iv : bc.intervals) {
        out << iv.dim << ' ';
        std::snprintf(num, sizeof num, "%.17g", iv.birth);
        out << num << ' ';
        if (std::isfinite(iv.death)) {
            std::snprintf(num, sizeof num, "%.17g", iv.death);
            out << num;
        } else {
            out << "inf";
        }
        out << '\n';
    }
    return out.str();
}

Barcode parse_barcode(const std::string& text) {
    Barcode bc;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream row(line);
        BarcodeInterval iv;
        std::string death;
        if (!(row >> iv.dim >> iv.birth >> death))
            throw std::invalid_argument("bad barcode line: " + line);
        iv.death = (death == "inf") ? kInf : std::stod(death);
        bc.intervals.push_back(iv);
    }
    std::sort(bc.intervals.begin(), bc.intervals.end(), interval_less);
    return bc;
}

}  // namespace sparse_nerve
