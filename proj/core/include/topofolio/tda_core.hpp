#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Everything here is a pure function of its inputs; callers may evaluate
// many assets or sub-windows concurrently.

namespace topofolio::tda {

/// Point cloud in d-dimensional space, one point per row.
struct PointCloud {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data; // row-major
    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Time-delay embedding parameters: delay tau and embedding dimension d.
/// A series of length T embeds iff T > (d-1)*tau.
struct EmbeddingConfig {
    std::size_t delay = 1;
    std::size_t dim = 3;
};

/// Dense symmetric distance matrix with zero diagonal.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}
    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double v) {
        d_[i * n_ + j] = v;
        d_[j * n_ + i] = v;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> d_;
};

struct PersistencePair {
    double birth = 0.0;
    double death = 0.0;
};

/// Multiset of finite (birth, death) pairs for one homology dimension.
/// The essential (never-dying) class is excluded.
struct PersistenceDiagram {
    std::vector<PersistencePair> pairs;
    int dim = 0;
    double max_death() const;
};

/// Grid-sampled persistence landscape: row k holds samples of eta_{k+1}(t)
/// at t = grid_start + g * grid_step. Rows are pointwise non-increasing in k.
struct Landscape {
    double grid_start = 0.0;
    double grid_step = 0.0;
    std::size_t grid_len = 0;
    std::size_t k_max = 0;
    std::vector<double> values; // row-major, k_max x grid_len
    double at(std::size_t k, std::size_t g) const { return values[k * grid_len + g]; }
    double grid_point(std::size_t g) const { return grid_start + static_cast<double>(g) * grid_step; }
    bool same_grid(const Landscape& other) const;
};

/// Delay-coordinate reconstruction: row j = [s_j, s_{j+tau}, ..., s_{j+(d-1)tau}],
/// producing len(series) - (d-1)*tau points. Throws if the series is too short.
PointCloud takens_embed(std::span<const double> series, const EmbeddingConfig& cfg);

/// Euclidean distances between all point pairs.
DistanceMatrix pairwise_distances(const PointCloud& cloud);

/// 0-dimensional Vietoris-Rips persistence of a finite metric space.
/// Returns exactly m-1 pairs (0, w), the minimum-spanning-tree edge weights,
/// sorted ascending by death; computed by Kruskal with union-find. Equal-weight
/// edges are processed in ascending (i, j) order. m = 1 gives an empty diagram;
/// m = 0 throws.
PersistenceDiagram rips_persistence_h0(const DistanceMatrix& dist);

/// Triangle function of a birth-death pair: t-a on [a,(a+b)/2], b-t on
/// [(a+b)/2, b], 0 otherwise.
double tent(const PersistencePair& pair, double t);

/// Sample the first k_max landscape levels on a uniform grid. values[k][g] is
/// the (k+1)-th largest tent value at grid point g (0 when fewer than k+1
/// tents are positive there). Warns on stderr if the grid does not cover the
/// diagram's support. Throws on grid_step <= 0, grid_len < 2 or k_max < 1.
Landscape build_landscape(const PersistenceDiagram& diag, double grid_start,
                          double grid_step, std::size_t grid_len, std::size_t k_max);

/// ( sum_k integral |eta_k(t)|^p dt )^(1/p), trapezoidal rule on the grid.
/// Throws when p < 1.
double landscape_norm(const Landscape& land, double p);

/// Pointwise arithmetic mean of landscapes sharing an identical grid and
/// k_max. Throws on an empty list or mismatched grids.
Landscape mean_landscape(std::span<const Landscape> lands);

} // namespace topofolio::tda
