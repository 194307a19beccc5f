#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include <Eigen/Dense>

#include "mhbhm/errors.hpp"
#include "mhbhm/grid.hpp"
#include "mhbhm/random_field.hpp"
#include "mhbhm/rng.hpp"
#include "mhbhm/vulnerability.hpp"

namespace mhbhm {

/// Variance of the multiplicative log-normal damage error (log scale).
struct ErrorParams {
    double variance; // sigma^2 > 0

    void validate() const {
        if (!(variance > 0.0) || !std::isfinite(variance))
            throw ConfigError("ErrorParams: variance must be positive and finite");
    }
};

/// One event: hazard surfaces plus the observed aggregate damage, absent
/// for pure prediction targets.
struct EventRecord {
    std::string event_id;
    HazardFieldSet hazards;
    std::optional<double> observed_damage;

    void validate() const {
        if (event_id.empty()) throw ConfigError("EventRecord: empty event id");
        if (observed_damage && !(*observed_damage > 0.0))
            throw ConfigError("EventRecord '" + event_id +
                              "': observed damage must be positive (log-damage model)");
    }
};

/// Exposure plus N events on one grid. Exposure is event-invariant; every
/// event must share the catalog grid and hazard labels.
struct EventCatalog {
    SpatialGrid grid;
    ExposureField exposure;
    std::vector<std::string> hazard_names;
    std::vector<Normalization> normalization; // catalog-wide, per hazard
    std::vector<EventRecord> events;
    std::string catalog_id;

    void validate() const {
        if (exposure.grid != grid) throw ConfigError("EventCatalog: exposure grid mismatch");
        if (hazard_names.size() != normalization.size())
            throw ConfigError("EventCatalog: one normalization entry per hazard required");
        std::unordered_set<std::string> seen;
        for (const auto& ev : events) {
            ev.validate();
            if (!seen.insert(ev.event_id).second)
                throw ConfigError("EventCatalog: duplicate event id '" + ev.event_id + "'");
            if (ev.hazards.grid != grid)
                throw ConfigError("EventCatalog: event '" + ev.event_id + "' grid mismatch");
            if (ev.hazards.names != hazard_names)
                throw ConfigError("EventCatalog: event '" + ev.event_id + "' hazard labels mismatch");
        }
    }
};

/// Aggregated damage mean: sum over cells of exposure times fractional loss.
inline double expected_damage(const ExposureField& exposure, const HazardFieldSet& fields,
                              const VulnerabilityModel& model) {
    if (exposure.grid != fields.grid)
        throw DataError("expected_damage: exposure and hazard fields on different grids");
    const Eigen::VectorXd v = vulnerability_surface(model, fields);
    double total = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) total += exposure.values[i] * v[i];
    return total;
}

/// One multiplicative log-normal damage draw: expected * exp(eps),
/// eps ~ N(0, variance).
inline double simulate_damage(double expected, const ErrorParams& err, std::uint64_t seed) {
    err.validate();
    if (!(expected > 0.0) || !std::isfinite(expected))
        throw ConfigError("simulate_damage: expected damage must be positive and finite");
    SplitMix64 rng(seed);
    return expected * std::exp(std::sqrt(err.variance) * rng.normal());
}

inline double normal_log_pdf(double x, double mean, double variance) {
    const double r = x - mean;
    return -0.5 * std::log(2.0 * 3.14159265358979323846 * variance) - r * r / (2.0 * variance);
}

/// Sum over events of the normal log-density of log-damage around the log
/// of the aggregated damage mean.
inline double log_likelihood(const EventCatalog& catalog, const VulnerabilityModel& model,
                             const ErrorParams& err) {
    err.validate();
    double ll = 0.0;
    for (const auto& ev : catalog.events) {
        if (!ev.observed_damage)
            throw DataError("log_likelihood: event '" + ev.event_id + "' has no observed damage");
        const double mean = expected_damage(catalog.exposure, ev.hazards, model);
        if (!(mean > 0.0))
            throw NumericalError("log_likelihood: degenerate zero expected damage for event '" +
                                 ev.event_id + "' (log of the mean is undefined)");
        ll += normal_log_pdf(std::log(*ev.observed_damage), std::log(mean), err.variance);
    }
    return ll;
}

} // namespace mhbhm
