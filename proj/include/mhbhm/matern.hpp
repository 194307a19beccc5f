#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "mhbhm/errors.hpp"

namespace mhbhm {

/// Matern covariance parameters: marginal variance sigma^2, range rho
/// (distance units), smoothness nu.
struct MaternParams {
    double variance;   // sigma^2 > 0
    double range;      // rho > 0
    double smoothness; // nu > 0

    void validate() const {
        if (!(variance > 0.0) || !std::isfinite(variance))
            throw ConfigError("MaternParams: variance must be positive and finite");
        if (!(range > 0.0) || !std::isfinite(range))
            throw ConfigError("MaternParams: range must be positive and finite");
        if (!(smoothness > 0.0) || !std::isfinite(smoothness))
            throw ConfigError("MaternParams: smoothness must be positive and finite");
    }
};

/// Matern covariance at lag d, scaled-argument parameterization
/// x = sqrt(2 nu) d / rho:
///
///   C(d) = sigma^2 * 2^(1-nu)/Gamma(nu) * x^nu * K_nu(x)
///
/// nu in {1/2, 3/2, 5/2} takes the exact closed form (exponential,
/// (1+x)e^-x, (1+x+x^2/3)e^-x); any other nu goes through the numerically
/// evaluated modified Bessel function of the second kind.
inline double matern_covariance(double d, const MaternParams& p) {
    p.validate();
    if (!(d >= 0.0) || !std::isfinite(d))
        throw ConfigError("matern_covariance: distance must be nonnegative and finite");
    if (d == 0.0) return p.variance;

    if (p.smoothness == 0.5) {
        return p.variance * std::exp(-d / p.range);
    }
    if (p.smoothness == 1.5) {
        const double x = std::sqrt(3.0) * d / p.range;
        return p.variance * (1.0 + x) * std::exp(-x);
    }
    if (p.smoothness == 2.5) {
        const double x = std::sqrt(5.0) * d / p.range;
        return p.variance * (1.0 + x + x * x / 3.0) * std::exp(-x);
    }

    const double nu = p.smoothness;
    const double x = std::sqrt(2.0 * nu) * d / p.range;
    // x^nu * K_nu(x) -> Gamma(nu) 2^(nu-1) as x -> 0; below this cutoff the
    // product is 1 to double precision for the nu ranges in use
    if (x < 1e-12) return p.variance;
    const double scaled = std::pow(x, nu) * std::cyl_bessel_k(nu, x);
    if (!std::isfinite(scaled)) return 0.0; // deep-tail underflow
    return p.variance * std::pow(2.0, 1.0 - nu) / std::tgamma(nu) * scaled;
}

/// Parameters of an M-variate Matern cross-covariance model: per-hazard
/// marginal Matern parameters plus a cross-correlation matrix R.
///
/// Cross terms use sigma_jk = R[j][k] sqrt(sigma_j^2 sigma_k^2),
/// nu_jk = (nu_j + nu_k)/2, rho_jk = (rho_j + rho_k)/2 (a common range when
/// the marginals share one). This is a sufficient construction only up to
/// the positive-definiteness of the assembled covariance, which is checked
/// by factorization whenever a matrix is built.
class CrossMaternParams {
public:
    CrossMaternParams(std::vector<MaternParams> marginals, Eigen::MatrixXd correlation)
        : marginals_(std::move(marginals)), correlation_(std::move(correlation)) {
        const auto m = static_cast<Eigen::Index>(marginals_.size());
        if (m < 1) throw ConfigError("CrossMaternParams: at least one hazard required");
        for (const auto& p : marginals_) p.validate();
        if (correlation_.rows() != m || correlation_.cols() != m)
            throw ConfigError("CrossMaternParams: correlation matrix size does not match hazard count");
        for (Eigen::Index j = 0; j < m; ++j) {
            if (std::abs(correlation_(j, j) - 1.0) > 1e-12)
                throw ConfigError("CrossMaternParams: correlation diagonal must be 1");
            for (Eigen::Index k = 0; k < m; ++k) {
                const double r = correlation_(j, k);
                if (!std::isfinite(r) || r < -1.0 || r > 1.0)
                    throw ConfigError("CrossMaternParams: correlations must lie in [-1, 1]");
                if (std::abs(r - correlation_(k, j)) > 1e-12)
                    throw ConfigError("CrossMaternParams: correlation matrix must be symmetric");
            }
        }
    }

    int n_hazards() const { return static_cast<int>(marginals_.size()); }
    const MaternParams& marginal(int j) const { return marginals_[static_cast<std::size_t>(j)]; }
    const Eigen::MatrixXd& correlation() const { return correlation_; }

    /// Cross-covariance between hazards j and k at lag d.
    double cross_covariance(double d, int j, int k) const {
        const MaternParams& a = marginals_[static_cast<std::size_t>(j)];
        const MaternParams& b = marginals_[static_cast<std::size_t>(k)];
        if (j == k) return matern_covariance(d, a);
        const double r = correlation_(j, k);
        if (r == 0.0) return 0.0;
        MaternParams cross{1.0, 0.5 * (a.range + b.range), 0.5 * (a.smoothness + b.smoothness)};
        return r * std::sqrt(a.variance * b.variance) * matern_covariance(d, cross);
    }

private:
    std::vector<MaternParams> marginals_;
    Eigen::MatrixXd correlation_;
};

} // namespace mhbhm
