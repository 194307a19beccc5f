#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "mhbhm/errors.hpp"

namespace mhbhm {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }

/// Regular planar lattice. Cell (row, col) has its center at
/// origin + ((col + 0.5) * cell_size, (row + 0.5) * cell_size); the linear
/// index runs row-major.
class SpatialGrid {
public:
    SpatialGrid(int n_rows, int n_cols, Point origin = {0.0, 0.0}, double cell_size = 1.0)
        : n_rows_(n_rows), n_cols_(n_cols), origin_(origin), cell_size_(cell_size) {
        if (n_rows < 1 || n_cols < 1)
            throw ConfigError("SpatialGrid: n_rows and n_cols must be positive");
        if (!(cell_size > 0.0) || !std::isfinite(cell_size))
            throw ConfigError("SpatialGrid: cell_size must be positive and finite");
        if (!std::isfinite(origin.x) || !std::isfinite(origin.y))
            throw ConfigError("SpatialGrid: origin must be finite");
        centers_.reserve(static_cast<std::size_t>(n_rows) * n_cols);
        for (int r = 0; r < n_rows; ++r)
            for (int c = 0; c < n_cols; ++c)
                centers_.push_back({origin.x + (c + 0.5) * cell_size,
                                    origin.y + (r + 0.5) * cell_size});
    }

    int rows() const { return n_rows_; }
    int cols() const { return n_cols_; }
    int size() const { return n_rows_ * n_cols_; }
    double cell_size() const { return cell_size_; }
    Point origin() const { return origin_; }

    int index(int row, int col) const { return row * n_cols_ + col; }
    int row_of(int i) const { return i / n_cols_; }
    int col_of(int i) const { return i % n_cols_; }

    const Point& center(int i) const { return centers_[static_cast<std::size_t>(i)]; }
    const std::vector<Point>& centers() const { return centers_; }

    double distance(int i, int j) const {
        const Point& a = centers_[static_cast<std::size_t>(i)];
        const Point& b = centers_[static_cast<std::size_t>(j)];
        return std::hypot(a.x - b.x, a.y - b.y);
    }

    /// Bounding box of the grid (cell edges, not centers).
    double min_x() const { return origin_.x; }
    double max_x() const { return origin_.x + n_cols_ * cell_size_; }
    double min_y() const { return origin_.y; }
    double max_y() const { return origin_.y + n_rows_ * cell_size_; }

    bool operator==(const SpatialGrid& o) const {
        return n_rows_ == o.n_rows_ && n_cols_ == o.n_cols_ &&
               origin_ == o.origin_ && cell_size_ == o.cell_size_;
    }
    bool operator!=(const SpatialGrid& o) const { return !(*this == o); }

private:
    int n_rows_;
    int n_cols_;
    Point origin_;
    double cell_size_;
    std::vector<Point> centers_;
};

/// Urban-center exposure mean: mu(s) = alpha0 + sum_k alpha_k exp(-phi_k |s - c_k|^2).
struct UrbanCenter {
    Point location;
    double amplitude = 0.0;
    double decay = 1.0; // phi_k, per squared distance unit
};

struct UrbanCenterSpec {
    double baseline = 0.0; // alpha0
    std::vector<UrbanCenter> centers;

    void validate(const SpatialGrid& grid) const {
        if (!std::isfinite(baseline))
            throw ConfigError("UrbanCenterSpec: baseline must be finite");
        for (const auto& c : centers) {
            if (!std::isfinite(c.amplitude) || !std::isfinite(c.decay) ||
                !std::isfinite(c.location.x) || !std::isfinite(c.location.y))
                throw ConfigError("UrbanCenterSpec: non-finite parameter");
            if (!(c.decay > 0.0))
                throw ConfigError("UrbanCenterSpec: decay rates must be positive");
            if (c.location.x < grid.min_x() || c.location.x > grid.max_x() ||
                c.location.y < grid.min_y() || c.location.y > grid.max_y())
                throw ConfigError("UrbanCenterSpec: center outside grid bounding box");
        }
    }
};

/// Evaluates the urban-center mean surface at every cell center.
inline Eigen::VectorXd build_exposure_mean(const SpatialGrid& grid, const UrbanCenterSpec& spec) {
    spec.validate(grid);
    Eigen::VectorXd mu(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        const Point& s = grid.center(i);
        double v = spec.baseline;
        for (const auto& c : spec.centers) {
            const double dx = s.x - c.location.x;
            const double dy = s.y - c.location.y;
            v += c.amplitude * std::exp(-c.decay * (dx * dx + dy * dy));
        }
        mu[i] = v;
    }
    return mu;
}

/// Per-cell asset values on a grid, nonnegative by invariant.
struct ExposureField {
    SpatialGrid grid;
    Eigen::VectorXd values;

    ExposureField(SpatialGrid g, Eigen::VectorXd v) : grid(std::move(g)), values(std::move(v)) {
        if (values.size() != grid.size())
            throw ConfigError("ExposureField: value count does not match grid size");
        for (Eigen::Index i = 0; i < values.size(); ++i) {
            if (!std::isfinite(values[i]))
                throw ConfigError("ExposureField: non-finite value");
            if (values[i] < 0.0)
                throw ConfigError("ExposureField: negative exposure value");
        }
    }
};

} // namespace mhbhm
