#include "sparse_nerve/metric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sparse_nerve {

std::string metric_name(MetricKind m) {
    switch (m) {
        case MetricKind::L2: return "l2";
        case MetricKind::L1: return "l1";
        case MetricKind::Linf: return "linf";
    }
    return "?";
}

MetricKind metric_from_name(const std::string& name) {
    if (name == "l2") return MetricKind::L2;
    if (name == "l1") return MetricKind::L1;
    if (name == "linf") return MetricKind::Linf;
    throw std::invalid_argument("unknown metric: " + name + " (expected l2, l1, or linf)");
}

Real metric_distance(std::span<const Real> a, std::span<const Real> b, MetricKind m) {
    Real acc = 0.0;
    switch (m) {
        case MetricKind::L2:
            for (std::size_t k = 0; k < a.size(); ++k) {
                Real d = a[k] - b[k];
                acc += d * d;
            }
            return std::sqrt(acc);
        case MetricKind::L1:
            for (std::size_t k = 0; k < a.size(); ++k) acc += std::abs(a[k] - b[k]);
            return acc;
        case MetricKind::Linf:
            for (std::size_t k = 0; k < a.size(); ++k) acc = std::max(acc, std::abs(a[k] - b[k]));
            return acc;
    }
    return acc;
}

PointCloud::PointCloud(std::vector<Real> flat_coords, int dim, MetricKind metric)
    : coords_(std::move(flat_coords)), dim_(dim), metric_(metric) {
    if (dim_ <= 0) throw std::invalid_argument("point dimension must be positive");
    if (coords_.empty() || coords_.size() % static_cast<std::size_t>(dim_) != 0)
        throw std::invalid_argument("coordinate buffer must hold a positive whole number of points");
    for (Real c : coords_)
        if (!std::isfinite(c)) throw std::invalid_argument("coordinates must be finite");
}

void PointCloud::check_index(Index i) const {
    if (i < 0 || i >= size()) throw std::out_of_range("point index out of range");
}

std::span<const Real> PointCloud::point(Index i) const {
    check_index(i);
    return {coords_.data() + static_cast<std::size_t>(i) * dim_, static_cast<std::size_t>(dim_)};
}

Point PointCloud::point_copy(Index i) const {
    auto p = point(i);
    return Point(p.begin(), p.end());
}

Real PointCloud::distance(Index i, Index j) const {
    return metric_distance(point(i), point(j), metric_);
}

Real PointCloud::distance_to(Index i, std::span<const Real> x) const {
    if (x.size() != static_cast<std::size_t>(dim_))
        throw std::invalid_argument("query point has wrong dimension");
    return metric_distance(point(i), x, metric_);
}

Real PointCloud::diameter() const {
    Real best = 0.0;
    for (Index i = 0; i < size(); ++i)
        for (Index j = i + 1; j < size(); ++j) best = std::max(best, distance(i, j));
    return best;
}

Real distance(const PointCloud& cloud, Index i, Index j) { return cloud.distance(i, j); }

bool ball_contains(const PointCloud& cloud, Index center, Real radius, std::span<const Real> x) {
    if (radius == kEmptyBallRadius) return false;
    return cloud.distance_to(center, x) <= radius;
}

PointCloud parse_points(const std::string& text, MetricKind metric) {
    std::vector<Real> coords;
    int dim = -1;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream row(line);
        std::vector<Real> vals;
        Real v;
        while (row >> v) vals.push_back(v);
        if (!row.eof()) {
            std::string junk;
            row.clear();
            row >> junk;
            throw std::invalid_argument("line " + std::to_string(lineno) + ": not a number: " + junk);
        }
        if (vals.empty()) continue;
        if (dim == -1)
            dim = static_cast<int>(vals.size());
        else if (static_cast<int>(vals.size()) != dim)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected " +
                                        std::to_string(dim) + " coordinates, got " +
                                        std::to_string(vals.size()));
        coords.insert(coords.end(), vals.begin(), vals.end());
    }
    if (dim == -1) throw std::invalid_argument("no points in input");
    return PointCloud(std::move(coords), dim, metric);
}

PointCloud load_points(const std::string& path, MetricKind metric) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_points(buf.str(), metric);
}

std::string format_points(const PointCloud& cloud) {
    std::ostringstream out;
    char num[64];
    for (Index i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        for (std::size_t k = 0; k < p.size(); ++k) {
            std::snprintf(num, sizeof num, "%.17g", p[k]);
            out << (k ? " " : "") << num;
        }
        out << '\n';
    }
    return out.str();
}

void save_points(const PointCloud& cloud, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot open " + path + " for writing");
    f << format_points(cloud);
}

}  // namespace sparse_nerve
