#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "mhbhm/errors.hpp"
#include "mhbhm/random_field.hpp"

namespace mhbhm {

/// Logistic sigmoid 1/(1+exp(-t)) via the branch that never exponentiates a
/// large positive argument; stable over the full double range.
inline double stable_sigmoid(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

/// Standard normal CDF through the complementary error function;
/// absolute error below 1e-12 over the double range.
inline double std_normal_cdf(double z) {
    return 0.5 * std::erfc(-z * 0.7071067811865475244);
}

/// Damage power function parameters: no damage below v_thresh, half the
/// asset value lost at v_half.
struct EmanuelParams {
    double v_thresh; // wind speed units
    double v_half;

    void validate() const {
        if (!std::isfinite(v_thresh) || !std::isfinite(v_half))
            throw ConfigError("EmanuelParams: non-finite parameter");
        if (v_thresh < 0.0) throw ConfigError("EmanuelParams: v_thresh must be nonnegative");
        if (!(v_half > v_thresh)) throw ConfigError("EmanuelParams: v_half must exceed v_thresh");
    }
};

/// f(v_o) = v^3/(1+v^3), v = max(v_o - v_thresh, 0)/(v_half - v_thresh).
inline double emanuel_fraction(double v_o, const EmanuelParams& p) {
    p.validate();
    if (!std::isfinite(v_o)) throw ConfigError("emanuel_fraction: non-finite wind speed");
    const double v = std::max(v_o - p.v_thresh, 0.0) / (p.v_half - p.v_thresh);
    if (v <= 1.0) {
        const double v3 = v * v * v;
        return v3 / (1.0 + v3);
    }
    const double w = 1.0 / v; // avoids overflow of v^3 for extreme winds
    const double w3 = w * w * w;
    return 1.0 / (1.0 + w3);
}

/// Log-normal vulnerability: f(h) = Phi((ln h - eta)/beta).
struct LogNormalVulnParams {
    double median_log; // eta
    double dispersion; // beta > 0

    void validate() const {
        if (!std::isfinite(median_log) || !std::isfinite(dispersion))
            throw ConfigError("LogNormalVulnParams: non-finite parameter");
        if (!(dispersion > 0.0)) throw ConfigError("LogNormalVulnParams: dispersion must be positive");
    }
};

inline double lognormal_fraction(double h, const LogNormalVulnParams& p) {
    p.validate();
    if (!(h > 0.0) || !std::isfinite(h))
        throw ConfigError("lognormal_fraction: hazard intensity must be positive (log-scale model)");
    return std_normal_cdf((std::log(h) - p.median_log) / p.dispersion);
}

/// Multi-hazard logistic vulnerability: f(h) = 1/(1 + exp(gamma - beta.h)).
/// `hazards`, when non-empty, names the field each coefficient applies to;
/// empty means positional against the full field set.
struct LogisticVulnParams {
    double threshold; // gamma
    Eigen::VectorXd coefficients;
    std::vector<std::string> hazards;

    void validate() const {
        if (!std::isfinite(threshold)) throw ConfigError("LogisticVulnParams: non-finite threshold");
        if (coefficients.size() < 1) throw ConfigError("LogisticVulnParams: at least one coefficient");
        for (Eigen::Index j = 0; j < coefficients.size(); ++j)
            if (!std::isfinite(coefficients[j]))
                throw ConfigError("LogisticVulnParams: non-finite coefficient");
        if (!hazards.empty() && static_cast<Eigen::Index>(hazards.size()) != coefficients.size())
            throw ConfigError("LogisticVulnParams: one hazard label per coefficient");
    }
};

inline double logistic_fraction(const Eigen::VectorXd& h, const LogisticVulnParams& p) {
    p.validate();
    if (h.size() != p.coefficients.size())
        throw ConfigError("logistic_fraction: intensity vector length does not match coefficients");
    return stable_sigmoid(p.coefficients.dot(h) - p.threshold);
}

/// Single-hazard members carry the label of the field they consume.
struct EmanuelModel {
    EmanuelParams params;
    std::string hazard = "wind";
};

struct LogNormalModel {
    LogNormalVulnParams params;
    std::string hazard = "wind";
};

struct LogisticModel {
    LogisticVulnParams params;
};

using VulnerabilityModel = std::variant<EmanuelModel, LogNormalModel, LogisticModel>;

/// Per-cell fractional loss surface of a model over a hazard field set.
inline Eigen::VectorXd vulnerability_surface(const VulnerabilityModel& model,
                                             const HazardFieldSet& fields) {
    const int n = fields.grid.size();
    Eigen::VectorXd out(n);
    if (const auto* em = std::get_if<EmanuelModel>(&model)) {
        const Eigen::VectorXd& f = fields.field(em->hazard);
        for (int i = 0; i < n; ++i) out[i] = emanuel_fraction(f[i], em->params);
        return out;
    }
    if (const auto* ln = std::get_if<LogNormalModel>(&model)) {
        const Eigen::VectorXd& f = fields.field(ln->hazard);
        for (int i = 0; i < n; ++i) out[i] = lognormal_fraction(f[i], ln->params);
        return out;
    }
    const auto& lg = std::get<LogisticModel>(model);
    lg.params.validate();
    const Eigen::Index b = lg.params.coefficients.size();
    std::vector<const Eigen::VectorXd*> cols;
    if (!lg.params.hazards.empty()) {
        for (const auto& label : lg.params.hazards) cols.push_back(&fields.field(label));
    } else {
        if (b != fields.n_hazards())
            throw ConfigError("vulnerability_surface: logistic coefficient count (" +
                              std::to_string(b) + ") does not match hazard count (" +
                              std::to_string(fields.n_hazards()) + ")");
        for (const auto& v : fields.values) cols.push_back(&v);
    }
    for (int i = 0; i < n; ++i) {
        double score = 0.0;
        for (Eigen::Index j = 0; j < b; ++j)
            score += lg.params.coefficients[j] * (*cols[static_cast<std::size_t>(j)])[i];
        out[i] = stable_sigmoid(score - lg.params.threshold);
    }
    return out;
}

} // namespace mhbhm
