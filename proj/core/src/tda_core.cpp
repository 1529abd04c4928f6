#include "topofolio/tda_core.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <stdexcept>

namespace topofolio::tda {

double PersistenceDiagram::max_death() const {
    double m = 0.0;
    for (const auto& p : pairs) m = std::max(m, p.death);
    return m;
}

bool Landscape::same_grid(const Landscape& other) const {
    return grid_start == other.grid_start && grid_step == other.grid_step &&
           grid_len == other.grid_len && k_max == other.k_max;
}

PointCloud takens_embed(std::span<const double> series, const EmbeddingConfig& cfg) {
    if (cfg.delay < 1 || cfg.dim < 1)
        throw std::invalid_argument("takens_embed: delay and dim must be >= 1");
    const std::size_t span = (cfg.dim - 1) * cfg.delay;
    if (series.size() <= span)
        throw std::invalid_argument("takens_embed: series length must exceed (dim-1)*delay = " +
                                    std::to_string(span) + ", got " +
                                    std::to_string(series.size()));
    PointCloud cloud;
    cloud.rows = series.size() - span;
    cloud.cols = cfg.dim;
    cloud.data.resize(cloud.rows * cloud.cols);
    for (std::size_t j = 0; j < cloud.rows; ++j)
        for (std::size_t c = 0; c < cfg.dim; ++c)
            cloud.data[j * cfg.dim + c] = series[j + c * cfg.delay];
    return cloud;
}

DistanceMatrix pairwise_distances(const PointCloud& cloud) {
    DistanceMatrix dist(cloud.rows);
    for (std::size_t i = 0; i < cloud.rows; ++i) {
        const double* pi = cloud.data.data() + i * cloud.cols;
        for (std::size_t j = i + 1; j < cloud.rows; ++j) {
            const double* pj = cloud.data.data() + j * cloud.cols;
            double s = 0.0;
            for (std::size_t c = 0; c < cloud.cols; ++c) {
                double diff = pi[c] - pj[c];
                s += diff * diff;
            }
            dist.set(i, j, std::sqrt(s));
        }
    }
    return dist;
}

namespace {

struct Edge {
    double w;
    std::uint32_t i, j;
    bool operator<(const Edge& o) const {
        if (w != o.w) return w < o.w;
        if (i != o.i) return i < o.i;
        return j < o.j;
    }
};

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
};

} // namespace

PersistenceDiagram rips_persistence_h0(const DistanceMatrix& dist) {
    const std::size_t m = dist.size();
    if (m == 0) throw std::invalid_argument("rips_persistence_h0: empty point set");
    PersistenceDiagram diag;
    diag.dim = 0;
    if (m == 1) return diag; // only the essential class

    std::vector<Edge> edges;
    edges.reserve(m * (m - 1) / 2);
    for (std::uint32_t i = 0; i < m; ++i)
        for (std::uint32_t j = i + 1; j < m; ++j)
            edges.push_back({dist(i, j), i, j});
    std::sort(edges.begin(), edges.end());

    UnionFind uf(m);
    diag.pairs.reserve(m - 1);
    for (const Edge& e : edges) {
        if (uf.unite(e.i, e.j)) {
            diag.pairs.push_back({0.0, e.w});
            if (diag.pairs.size() == m - 1) break;
        }
    }
    return diag;
}

double tent(const PersistencePair& pair, double t) {
    if (t <= pair.birth || t >= pair.death) return 0.0;
    return std::min(t - pair.birth, pair.death - t);
}

Landscape build_landscape(const PersistenceDiagram& diag, double grid_start,
                          double grid_step, std::size_t grid_len, std::size_t k_max) {
    if (grid_step <= 0.0) throw std::invalid_argument("build_landscape: grid_step must be > 0");
    if (grid_len < 2) throw std::invalid_argument("build_landscape: grid_len must be >= 2");
    if (k_max < 1) throw std::invalid_argument("build_landscape: k_max must be >= 1");

    const double grid_end = grid_start + static_cast<double>(grid_len - 1) * grid_step;
    if (!diag.pairs.empty() && (grid_start > 0.0 || grid_end < diag.max_death()))
        std::cerr << "topofolio: landscape grid [" << grid_start << ", " << grid_end
                  << "] does not cover the diagram support [0, " << diag.max_death() << "]\n";

    Landscape land;
    land.grid_start = grid_start;
    land.grid_step = grid_step;
    land.grid_len = grid_len;
    land.k_max = k_max;
    land.values.assign(k_max * grid_len, 0.0);
    if (diag.pairs.empty()) return land;

    std::vector<double> vals;
    vals.reserve(diag.pairs.size());
    for (std::size_t g = 0; g < grid_len; ++g) {
        const double t = land.grid_point(g);
        vals.clear();
        for (const auto& p : diag.pairs) {
            double v = tent(p, t);
            if (v > 0.0) vals.push_back(v);
        }
        const std::size_t levels = std::min(k_max, vals.size());
        if (levels == 0) continue;
        std::partial_sort(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(levels),
                          vals.end(), std::greater<double>());
        for (std::size_t k = 0; k < levels; ++k)
            land.values[k * grid_len + g] = vals[k];
    }
    return land;
}

double landscape_norm(const Landscape& land, double p) {
    if (p < 1.0) throw std::invalid_argument("landscape_norm: p must be >= 1");
    if (land.grid_len < 2 || land.k_max == 0) return 0.0;
    double total = 0.0;
    for (std::size_t k = 0; k < land.k_max; ++k) {
        const double* row = land.values.data() + k * land.grid_len;
        double integral = 0.0;
        if (p == 1.0) {
            integral += 0.5 * row[0];
            for (std::size_t g = 1; g + 1 < land.grid_len; ++g) integral += row[g];
            integral += 0.5 * row[land.grid_len - 1];
        } else {
            integral += 0.5 * std::pow(row[0], p);
            for (std::size_t g = 1; g + 1 < land.grid_len; ++g) integral += std::pow(row[g], p);
            integral += 0.5 * std::pow(row[land.grid_len - 1], p);
        }
        total += integral * land.grid_step;
    }
    return p == 1.0 ? total : std::pow(total, 1.0 / p);
}

Landscape mean_landscape(std::span<const Landscape> lands) {
    if (lands.empty()) throw std::invalid_argument("mean_landscape: empty list");
    const Landscape& first = lands.front();
    for (const Landscape& l : lands)
        if (!l.same_grid(first))
            throw std::invalid_argument("mean_landscape: landscapes must share grid and k_max");

    Landscape mean = first;
    for (std::size_t i = 1; i < lands.size(); ++i)
        for (std::size_t v = 0; v < mean.values.size(); ++v)
            mean.values[v] += lands[i].values[v];
    const double inv = 1.0 / static_cast<double>(lands.size());
    for (double& v : mean.values) v *= inv;
    return mean;
}

} // namespace topofolio::tda
