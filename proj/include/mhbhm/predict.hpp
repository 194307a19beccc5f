#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mhbhm/damage.hpp"
#include "mhbhm/errors.hpp"
#include "mhbhm/inference.hpp"
#include "mhbhm/random_field.hpp"
#include "mhbhm/rng.hpp"
#include "mhbhm/vulnerability.hpp"

namespace mhbhm {

/// Posterior predictive damage sample for one event: one draw per retained
/// posterior draw.
struct PredictiveSample {
    std::string event_id;
    std::vector<double> damages;
    std::string posterior_hash;
    std::uint64_t seed = 0;
};

namespace detail {

/// Evenly spaced subsample indices, deterministic in (total, want).
inline std::vector<Eigen::Index> subsample_indices(Eigen::Index total, Eigen::Index want) {
    std::vector<Eigen::Index> idx;
    if (want <= 0 || want >= total) {
        idx.reserve(static_cast<std::size_t>(total));
        for (Eigen::Index i = 0; i < total; ++i) idx.push_back(i);
        return idx;
    }
    idx.reserve(static_cast<std::size_t>(want));
    for (Eigen::Index k = 0; k < want; ++k) idx.push_back(k * total / want);
    return idx;
}

} // namespace detail

/// Composition sampling from the posterior predictive: for each retained
/// draw (beta, gamma, sigma2), compute the damage mean on the new event's
/// hazards and multiply by a fresh log-normal error draw. The event must be
/// normalized with the training catalog's constants (checked against the
/// posterior provenance). max_draws > 0 thins to that many evenly spaced
/// draws.
inline PredictiveSample posterior_predict(const PosteriorSamples& posterior,
                                          const ExposureField& exposure,
                                          const std::string& event_id,
                                          const HazardFieldSet& new_event_hazards,
                                          std::uint64_t seed, int max_draws = 0) {
    posterior.validate();
    if (!new_event_hazards.normalization_known)
        throw DataError("posterior_predict: normalization metadata absent on new event");
    const ModelFamily family = family_from_name(posterior.provenance.model_family);
    for (const auto& label : family_hazards(family))
        if (new_event_hazards.index_of(label) < 0)
            throw DataError("posterior_predict: new event lacks hazard '" + label +
                            "' used in training");
    for (std::size_t j = 0; j < posterior.provenance.hazard_names.size(); ++j) {
        const auto& label = posterior.provenance.hazard_names[j];
        const int idx = new_event_hazards.index_of(label);
        if (idx < 0) continue; // extra training labels unused by the family
        const Normalization& train = posterior.provenance.normalization[j];
        const Normalization& ev = new_event_hazards.normalization[static_cast<std::size_t>(idx)];
        if (!(train == ev))
            throw DataError("posterior_predict: hazard '" + label +
                            "' normalized with constants different from the training catalog");
    }

    const Eigen::MatrixXd pooled = posterior.pooled();
    const auto indices = detail::subsample_indices(pooled.rows(), max_draws);

    // flatten the family's hazard columns once
    const auto hazards = family_hazards(family);
    const int n_beta = static_cast<int>(hazards.size());
    const int n_cells = new_event_hazards.grid.size();
    Eigen::MatrixXd h(n_cells, n_beta);
    for (int j = 0; j < n_beta; ++j) h.col(j) = new_event_hazards.field(hazards[static_cast<std::size_t>(j)]);
    if (exposure.grid != new_event_hazards.grid)
        throw DataError("posterior_predict: exposure and event grids differ");

    SplitMix64 rng(seed);
    PredictiveSample out;
    out.event_id = event_id;
    out.seed = seed;
    out.damages.reserve(indices.size());
    for (const Eigen::Index row : indices) {
        const Eigen::VectorXd beta = pooled.row(row).head(n_beta).transpose();
        const double gamma = pooled(row, n_beta);
        const double sigma2 = pooled(row, n_beta + 1);
        Eigen::ArrayXd score = (h * beta).array() - gamma;
        double mean = 0.0;
        for (int i = 0; i < n_cells; ++i) mean += exposure.values[i] * stable_sigmoid(score[i]);
        out.damages.push_back(mean * std::exp(std::sqrt(sigma2) * rng.normal()));
    }
    return out;
}

/// Published deterministic wind-only calibrations (Eq.-4 vulnerability).
struct DeterministicBaseline {
    EmanuelParams params;
    std::string label; // "baldwin" | "eberenz" | custom
    std::string wind_hazard = "wind";
};

inline DeterministicBaseline baldwin_baseline() { return {{25.0, 80.0}, "baldwin"}; }
inline DeterministicBaseline eberenz_baseline() { return {{25.7, 84.7}, "eberenz"}; }

/// Point damage estimate of a deterministic baseline: Eq.-3 aggregation
/// with the damage power function on raw (denormalized) wind speeds.
inline double baseline_predict(const DeterministicBaseline& baseline, const ExposureField& exposure,
                               const HazardFieldSet& hazards) {
    baseline.params.validate();
    if (hazards.index_of(baseline.wind_hazard) < 0)
        throw DataError("baseline_predict: missing hazard '" + baseline.wind_hazard + "'");
    if (!hazards.normalization_known)
        throw DataError("baseline_predict: input lacks denormalization constants; baseline "
                        "parameters are in physical wind units");
    const HazardFieldSet raw = denormalize_hazards(hazards);
    return expected_damage(exposure, raw,
                           EmanuelModel{baseline.params, baseline.wind_hazard});
}

/// Position of the true damage within the predictive sample: empirical CDF
/// with the midpoint convention for ties.
inline double percentile_of_truth(const PredictiveSample& sample, double true_damage) {
    if (sample.damages.empty()) throw DataError("percentile_of_truth: empty predictive sample");
    long less = 0, equal = 0;
    for (double d : sample.damages) {
        if (d < true_damage) ++less;
        else if (d == true_damage) ++equal;
    }
    return (static_cast<double>(less) + 0.5 * static_cast<double>(equal)) /
           static_cast<double>(sample.damages.size());
}

} // namespace mhbhm
