#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mhbhm/errors.hpp"
#include "mhbhm/stats.hpp"

namespace mhbhm {

/// Value-at-Risk: the empirical alpha-quantile of the damage sample
/// (linear interpolation between order statistics, h = (n-1)alpha + 1).
inline double var(const std::vector<double>& sample, double alpha) {
    if (sample.empty()) throw DataError("var: empty sample");
    return quantile(sample, alpha);
}

struct TvarResult {
    double value = 0.0;
    bool fallback = false; // no observation strictly exceeded VaR
};

/// Tail Value-at-Risk: mean of observations strictly above VaR_alpha. When
/// nothing exceeds VaR (e.g. a constant sample) the value falls back to
/// VaR_alpha and the flag is set.
inline TvarResult tvar(const std::vector<double>& sample, double alpha) {
    const double v = var(sample, alpha);
    double sum = 0.0;
    long count = 0;
    for (double x : sample) {
        if (x > v) {
            sum += x;
            ++count;
        }
    }
    if (count == 0) return TvarResult{v, true};
    return TvarResult{sum / static_cast<double>(count), false};
}

/// P(X > threshold) per threshold; thresholds must be strictly increasing.
inline std::vector<double> exceedance_curve(const std::vector<double>& sample,
                                            const std::vector<double>& thresholds) {
    if (sample.empty()) throw DataError("exceedance_curve: empty sample");
    for (std::size_t i = 1; i < thresholds.size(); ++i)
        if (!(thresholds[i] > thresholds[i - 1]))
            throw ConfigError("exceedance_curve: thresholds must be strictly increasing");
    std::vector<double> sorted = sample;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> probs;
    probs.reserve(thresholds.size());
    for (double t : thresholds) {
        const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t);
        probs.push_back(static_cast<double>(above) / static_cast<double>(sorted.size()));
    }
    return probs;
}

/// Order-1 Wasserstein distance between two empirical distributions
/// (step quantile functions evaluated over the merged probability grid).
/// Equal sizes reduce to the mean absolute difference of sorted samples.
inline double wasserstein_1d(const std::vector<double>& p_sample,
                             const std::vector<double>& q_sample) {
    if (p_sample.empty() || q_sample.empty()) throw DataError("wasserstein_1d: empty sample");
    std::vector<double> p = p_sample;
    std::vector<double> q = q_sample;
    std::sort(p.begin(), p.end());
    std::sort(q.begin(), q.end());
    const std::size_t n = p.size();
    const std::size_t m = q.size();
    if (n == m) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += std::abs(p[i] - q[i]);
        return s / static_cast<double>(n);
    }
    double total = 0.0;
    std::size_t i = 0, j = 0;
    double level = 0.0;
    while (i < n && j < m) {
        const double next_p = static_cast<double>(i + 1) / static_cast<double>(n);
        const double next_q = static_cast<double>(j + 1) / static_cast<double>(m);
        const double next = std::min(next_p, next_q);
        total += (next - level) * std::abs(p[i] - q[j]);
        level = next;
        if (next_p <= next) ++i;
        if (next_q <= next) ++j;
    }
    return total;
}

/// Symmetric VaR deviation: |y_true - VaR|.
inline double dev_sym(double true_damage, double var_value) {
    return std::abs(true_damage - var_value);
}

/// Weighted VaR deviation: sqrt(w e^2) when VaR overestimates (e < 0 with
/// e = y_true - VaR), plain |e| otherwise. Requires over-weight w > 1.
inline double dev_weighted(double true_damage, double var_value, double over_weight) {
    if (!(over_weight > 1.0)) throw ConfigError("dev_weighted: over-weight must exceed 1");
    const double e = true_damage - var_value;
    if (e < 0.0) return std::sqrt(over_weight * e * e);
    return std::abs(e);
}

/// Asymmetric (pinball) VaR deviation: max(alpha e, (alpha - 1) e) with
/// e = y_true - VaR.
inline double dev_asym(double true_damage, double var_value, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw ConfigError("dev_asym: alpha must lie in (0, 1)");
    const double e = true_damage - var_value;
    return std::max(alpha * e, (alpha - 1.0) * e);
}

// ---------------------------------------------------------------------------
// Report assembly
// ---------------------------------------------------------------------------

struct ModelRisk {
    std::string name;
    std::map<double, double> var_by_alpha;
    std::map<double, double> tvar_by_alpha;
    std::map<double, bool> tvar_fallback_by_alpha;
    std::vector<double> exceedance; // aligned with RiskReport::thresholds
    std::optional<double> wasserstein_to_truth;
    // present only for scalar truth
    std::map<double, double> dev_sym_by_alpha;
    std::map<double, double> dev_weighted_by_alpha;
    std::map<double, double> dev_asym_by_alpha;
};

struct RiskReport {
    std::vector<double> alphas;
    std::vector<double> thresholds;
    std::vector<ModelRisk> models;
    std::optional<ModelRisk> truth_metrics; // VaR/TVaR columns of a truth sample
    std::optional<double> truth_value;      // scalar truth, when given
    double over_weight = 2.0;
};

using TruthInput = std::variant<double, std::vector<double>>;

/// All metrics for a set of named predictive samples against a truth that
/// is either a scalar observation (deviation metrics) or a sample
/// (Wasserstein plus truth VaR/TVaR columns).
inline RiskReport build_risk_report(const std::vector<std::pair<std::string, std::vector<double>>>& models,
                                    const TruthInput& truth, const std::vector<double>& alphas,
                                    const std::vector<double>& thresholds, double over_weight = 2.0) {
    if (models.empty()) throw ConfigError("build_risk_report: at least one model required");
    for (double a : alphas)
        if (!(a > 0.0) || !(a < 1.0)) throw ConfigError("build_risk_report: alphas must lie in (0, 1)");

    RiskReport report;
    report.alphas = alphas;
    report.thresholds = thresholds;
    report.over_weight = over_weight;

    const std::vector<double>* truth_sample = std::get_if<std::vector<double>>(&truth);
    const double* truth_scalar = std::get_if<double>(&truth);
    if (truth_sample && truth_sample->empty())
        throw DataError("build_risk_report: empty truth sample");

    for (const auto& [name, sample] : models) {
        if (sample.empty()) throw DataError("build_risk_report: empty sample for model '" + name + "'");
        ModelRisk risk;
        risk.name = name;
        for (double a : alphas) {
            risk.var_by_alpha[a] = var(sample, a);
            const TvarResult t = tvar(sample, a);
            risk.tvar_by_alpha[a] = t.value;
            risk.tvar_fallback_by_alpha[a] = t.fallback;
        }
        if (!thresholds.empty()) risk.exceedance = exceedance_curve(sample, thresholds);
        if (truth_sample) risk.wasserstein_to_truth = wasserstein_1d(sample, *truth_sample);
        if (truth_scalar) {
            for (double a : alphas) {
                const double v = risk.var_by_alpha[a];
                risk.dev_sym_by_alpha[a] = dev_sym(*truth_scalar, v);
                risk.dev_weighted_by_alpha[a] = dev_weighted(*truth_scalar, v, over_weight);
                risk.dev_asym_by_alpha[a] = dev_asym(*truth_scalar, v, a);
            }
        }
        report.models.push_back(std::move(risk));
    }

    if (truth_sample) {
        ModelRisk t;
        t.name = "truth";
        for (double a : alphas) {
            t.var_by_alpha[a] = var(*truth_sample, a);
            const TvarResult r = tvar(*truth_sample, a);
            t.tvar_by_alpha[a] = r.value;
            t.tvar_fallback_by_alpha[a] = r.fallback;
        }
        if (!thresholds.empty()) t.exceedance = exceedance_curve(*truth_sample, thresholds);
        report.truth_metrics = std::move(t);
    }
    if (truth_scalar) report.truth_value = *truth_scalar;
    return report;
}

} // namespace mhbhm
