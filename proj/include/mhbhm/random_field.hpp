#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mhbhm/errors.hpp"
#include "mhbhm/grid.hpp"
#include "mhbhm/matern.hpp"
#include "mhbhm/rng.hpp"

namespace mhbhm {

/// Dense Matern covariance matrix over all cell-center pairs of a grid.
inline Eigen::MatrixXd matern_covariance_matrix(const SpatialGrid& grid, const MaternParams& p) {
    const int n = grid.size();
    Eigen::MatrixXd sigma(n, n);
    for (int i = 0; i < n; ++i) {
        sigma(i, i) = p.variance;
        for (int j = 0; j < i; ++j) {
            const double c = matern_covariance(grid.distance(i, j), p);
            sigma(i, j) = c;
            sigma(j, i) = c;
        }
    }
    return sigma;
}

/// Cholesky factor of a covariance matrix, with a jitter ladder: starting
/// at 1e-10 * scale, the diagonal perturbation escalates x10 up to
/// 1e-4 * scale before failing. `scale` should be the marginal variance of
/// the field; `context` names the parameter set in the failure message.
inline Eigen::MatrixXd cholesky_with_jitter(const Eigen::MatrixXd& sigma, double scale,
                                            const std::string& context) {
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() == Eigen::Success) return llt.matrixL();
    for (double jitter = 1e-10 * scale; jitter <= 1e-4 * scale * (1.0 + 1e-12); jitter *= 10.0) {
        Eigen::MatrixXd jittered = sigma;
        jittered.diagonal().array() += jitter;
        llt.compute(jittered);
        if (llt.info() == Eigen::Success) return llt.matrixL();
    }
    throw NumericalError("covariance factorization failed for " + context +
                         ": matrix not positive definite after jitter up to 1e-4 * " +
                         std::to_string(scale));
}

/// One zero-mean draw from the Gaussian process with Matern covariance over
/// the grid. Reproducible: the seed fully determines the draw.
inline Eigen::VectorXd sample_gaussian_field(const SpatialGrid& grid, const MaternParams& p,
                                             std::uint64_t seed) {
    p.validate();
    const Eigen::MatrixXd sigma = matern_covariance_matrix(grid, p);
    const Eigen::MatrixXd chol = cholesky_with_jitter(
        sigma, p.variance,
        "Matern(variance=" + std::to_string(p.variance) + ", range=" + std::to_string(p.range) +
            ", smoothness=" + std::to_string(p.smoothness) + ")");
    SplitMix64 rng(seed);
    Eigen::VectorXd z(grid.size());
    for (int i = 0; i < grid.size(); ++i) z[i] = rng.normal();
    return chol * z;
}

/// Exposure field draw: E(s) = mu(s) + exp(W(s)) with W a zero-mean Matern
/// field. Specs whose mean surface dips below zero anywhere are rejected,
/// keeping exposure nonnegative for every realization.
inline ExposureField sample_exposure_field(const SpatialGrid& grid, const UrbanCenterSpec& spec,
                                           const MaternParams& p, std::uint64_t seed) {
    const Eigen::VectorXd mu = build_exposure_mean(grid, spec);
    if (mu.minCoeff() < 0.0)
        throw ConfigError("sample_exposure_field: mean surface is negative at some cell; "
                          "exposure must be a nonnegative monetary value");
    const Eigen::VectorXd w = sample_gaussian_field(grid, p, seed);
    Eigen::VectorXd values = mu + w.array().exp().matrix();
    for (Eigen::Index i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i]))
            throw NumericalError("sample_exposure_field: non-finite exposure value (latent field overflow)");
    return ExposureField(grid, std::move(values));
}

/// Raw -> normalized affine map per hazard: normalized = (raw - offset) * scale.
struct Normalization {
    double offset = 0.0;
    double scale = 1.0;

    bool is_identity() const { return offset == 0.0 && scale == 1.0; }
    double apply(double raw) const { return (raw - offset) * scale; }
    double invert(double normalized) const { return normalized / scale + offset; }
};

inline bool operator==(const Normalization& a, const Normalization& b) {
    return a.offset == b.offset && a.scale == b.scale;
}

/// Per-event stack of M hazard intensity surfaces on a shared grid, with the
/// per-hazard raw->stored-units map. `normalization_known` distinguishes
/// fields whose unit provenance is recorded (possibly identity = raw units)
/// from fields loaded without any normalization metadata.
struct HazardFieldSet {
    SpatialGrid grid;
    std::vector<std::string> names;
    std::vector<Eigen::VectorXd> values;
    std::vector<Normalization> normalization;
    bool normalization_known = true;

    HazardFieldSet(SpatialGrid g, std::vector<std::string> n, std::vector<Eigen::VectorXd> v)
        : grid(std::move(g)), names(std::move(n)), values(std::move(v)),
          normalization(names.size()) {
        if (names.empty()) throw ConfigError("HazardFieldSet: at least one hazard required");
        if (names.size() != values.size())
            throw ConfigError("HazardFieldSet: name/value count mismatch");
        for (const auto& f : values) {
            if (f.size() != grid.size())
                throw ConfigError("HazardFieldSet: field length does not match grid size");
            for (Eigen::Index i = 0; i < f.size(); ++i)
                if (!std::isfinite(f[i]))
                    throw ConfigError("HazardFieldSet: non-finite hazard value");
        }
    }

    int n_hazards() const { return static_cast<int>(names.size()); }

    int index_of(const std::string& label) const {
        for (std::size_t j = 0; j < names.size(); ++j)
            if (names[j] == label) return static_cast<int>(j);
        return -1;
    }

    const Eigen::VectorXd& field(const std::string& label) const {
        const int j = index_of(label);
        if (j < 0) throw DataError("HazardFieldSet: no hazard labeled '" + label + "'");
        return values[static_cast<std::size_t>(j)];
    }
};

/// Joint draw of M correlated zero-mean fields plus the given means, in
/// paper ordering (location-major blocks of M hazards). With M = 1 the
/// covariance, factorization, and draw sequence coincide with
/// sample_gaussian_field, so the same seed yields the same field.
inline HazardFieldSet sample_multihazard_fields(const SpatialGrid& grid,
                                                const std::vector<std::string>& names,
                                                const std::vector<Eigen::VectorXd>& means,
                                                const CrossMaternParams& p, std::uint64_t seed) {
    const int m = p.n_hazards();
    const int n = grid.size();
    if (static_cast<int>(means.size()) != m)
        throw ConfigError("sample_multihazard_fields: one mean vector per hazard required");
    if (static_cast<int>(names.size()) != m)
        throw ConfigError("sample_multihazard_fields: one name per hazard required");
    for (const auto& mu : means)
        if (mu.size() != n)
            throw ConfigError("sample_multihazard_fields: mean length does not match grid size");

    Eigen::MatrixXd sigma(n * m, n * m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            const double d = grid.distance(i, j);
            for (int a = 0; a < m; ++a) {
                for (int b = 0; b < m; ++b) {
                    const double c = p.cross_covariance(d, a, b);
                    sigma(i * m + a, j * m + b) = c;
                    sigma(j * m + b, i * m + a) = c;
                }
            }
        }
    }

    double scale = 0.0;
    for (int a = 0; a < m; ++a) scale = std::max(scale, p.marginal(a).variance);
    std::string context = "cross-Matern over " + std::to_string(m) + " hazards (R offdiag";
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) context += " " + std::to_string(p.correlation()(a, b));
    context += ")";
    const Eigen::MatrixXd chol = cholesky_with_jitter(sigma, scale, context);

    SplitMix64 rng(seed);
    Eigen::VectorXd z(n * m);
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
    const Eigen::VectorXd joint = chol * z;

    std::vector<Eigen::VectorXd> fields;
    fields.reserve(static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a) {
        Eigen::VectorXd f(n);
        for (int i = 0; i < n; ++i) f[i] = means[static_cast<std::size_t>(a)][i] + joint[i * m + a];
        fields.push_back(std::move(f));
    }
    return HazardFieldSet(grid, names, std::move(fields));
}

enum class NormalizeStrategy {
    MinMax, // offset = min, scale = 1/(max - min); values land in [0, 1]
    MaxOnly // offset = 0, scale = 1/max; preserves the zero point
};

/// Normalization constants for one hazard from its pooled extrema.
inline Normalization normalization_from_extrema(double lo, double hi, NormalizeStrategy strategy,
                                                const std::string& label) {
    switch (strategy) {
    case NormalizeStrategy::MinMax:
        if (!(hi > lo))
            throw ConfigError("normalize: hazard '" + label +
                              "' is constant; min-max normalization undefined");
        return Normalization{lo, 1.0 / (hi - lo)};
    case NormalizeStrategy::MaxOnly:
        if (!(hi > 0.0))
            throw ConfigError("normalize: hazard '" + label +
                              "' has nonpositive maximum; max normalization undefined");
        return Normalization{0.0, 1.0 / hi};
    }
    throw ConfigError("normalize: unknown strategy");
}

/// Applies per-hazard constants expressed in the set's CURRENT units. The
/// stored raw->normalized map composes, so denormalization always recovers
/// raw units even after repeated normalization.
inline HazardFieldSet apply_normalization(const HazardFieldSet& in,
                                          const std::vector<Normalization>& constants) {
    if (constants.size() != in.names.size())
        throw ConfigError("apply_normalization: one constant per hazard required");
    HazardFieldSet out = in;
    for (std::size_t j = 0; j < constants.size(); ++j) {
        const Normalization& c = constants[j];
        if (!(c.scale > 0.0) || !std::isfinite(c.scale) || !std::isfinite(c.offset))
            throw ConfigError("apply_normalization: scale must be positive and finite");
        out.values[j] = ((in.values[j].array() - c.offset) * c.scale).matrix();
        const Normalization& prev = in.normalization[j];
        // (raw - o1)*s1 -> current; (current - o2)*s2 -> new
        out.normalization[j] = Normalization{prev.offset + c.offset / prev.scale, prev.scale * c.scale};
    }
    return out;
}

/// Normalizes a field set from its own per-hazard extrema. Already
/// normalized input (same constants) maps to itself: min 0 / max 1 yields
/// the identity constants under MinMax.
inline HazardFieldSet normalize_hazards(const HazardFieldSet& raw,
                                        NormalizeStrategy strategy = NormalizeStrategy::MinMax) {
    std::vector<Normalization> constants;
    constants.reserve(raw.names.size());
    for (std::size_t j = 0; j < raw.names.size(); ++j) {
        const double lo = raw.values[j].minCoeff();
        const double hi = raw.values[j].maxCoeff();
        constants.push_back(normalization_from_extrema(lo, hi, strategy, raw.names[j]));
    }
    return apply_normalization(raw, constants);
}

/// Inverts the recorded map, returning the set in raw units.
inline HazardFieldSet denormalize_hazards(const HazardFieldSet& in) {
    if (!in.normalization_known)
        throw DataError("denormalize_hazards: normalization metadata absent; raw units unrecoverable");
    HazardFieldSet out = in;
    for (std::size_t j = 0; j < in.names.size(); ++j) {
        const Normalization& c = in.normalization[j];
        out.values[j] = (in.values[j].array() / c.scale + c.offset).matrix();
        out.normalization[j] = Normalization{};
    }
    return out;
}

} // namespace mhbhm
