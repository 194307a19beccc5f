#pragma once

#include <atomic>
#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "mhbhm/damage.hpp"
#include "mhbhm/errors.hpp"
#include "mhbhm/rng.hpp"
#include "mhbhm/stats.hpp"
#include "mhbhm/vulnerability.hpp"

namespace mhbhm {

// ---------------------------------------------------------------------------
// Priors
// ---------------------------------------------------------------------------

/// Shape-rate gamma: Gam(5, 1) has mean 5.
struct GammaPrior {
    double shape;
    double rate;
};

struct UniformPrior {
    double lo;
    double hi;
};

using Prior = std::variant<GammaPrior, UniformPrior>;

inline double prior_log_density(const Prior& prior, double x) {
    if (const auto* g = std::get_if<GammaPrior>(&prior)) {
        if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
        return g->shape * std::log(g->rate) + (g->shape - 1.0) * std::log(x) - g->rate * x -
               std::lgamma(g->shape);
    }
    const auto& u = std::get<UniformPrior>(prior);
    if (x < u.lo || x > u.hi) return -std::numeric_limits<double>::infinity();
    return -std::log(u.hi - u.lo);
}

inline double prior_sample(const Prior& prior, SplitMix64& rng) {
    if (const auto* g = std::get_if<GammaPrior>(&prior)) return rng.gamma(g->shape, g->rate);
    const auto& u = std::get<UniformPrior>(prior);
    return rng.uniform(u.lo, u.hi);
}

/// Ordered, named parameter priors; the order defines the parameter-vector
/// layout used throughout inference.
class PriorSpec {
public:
    PriorSpec() = default;

    void add(std::string name, Prior prior) {
        if (index_of(name) >= 0) throw ConfigError("PriorSpec: duplicate parameter '" + name + "'");
        if (const auto* g = std::get_if<GammaPrior>(&prior)) {
            if (!(g->shape > 0.0) || !(g->rate > 0.0))
                throw ConfigError("PriorSpec: gamma shape and rate must be positive");
        } else {
            const auto& u = std::get<UniformPrior>(prior);
            if (!(u.lo < u.hi)) throw ConfigError("PriorSpec: uniform requires lo < hi");
        }
        names_.push_back(std::move(name));
        priors_.push_back(prior);
    }

    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const Prior& prior(int i) const { return priors_[static_cast<std::size_t>(i)]; }

    int index_of(const std::string& name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return static_cast<int>(i);
        return -1;
    }

    const Prior& prior_for(const std::string& name) const {
        const int i = index_of(name);
        if (i < 0) throw ConfigError("PriorSpec: unknown parameter name '" + name + "'");
        return priors_[static_cast<std::size_t>(i)];
    }

    double log_density_for(const std::string& name, double x) const {
        return prior_log_density(prior_for(name), x);
    }

private:
    std::vector<std::string> names_;
    std::vector<Prior> priors_;
};

/// Sum of prior log densities for a parameter vector aligned with the spec;
/// -inf outside any support.
inline double log_prior(const Eigen::VectorXd& theta, const PriorSpec& priors) {
    if (theta.size() != priors.size())
        throw ConfigError("log_prior: parameter vector length does not match prior spec");
    double lp = 0.0;
    for (int i = 0; i < priors.size(); ++i) {
        lp += prior_log_density(priors.prior(i), theta[i]);
        if (lp == -std::numeric_limits<double>::infinity()) return lp;
    }
    return lp;
}

// ---------------------------------------------------------------------------
// Model families
// ---------------------------------------------------------------------------

enum class ModelFamily { Multi, WindOnly, PrecipOnly };

inline std::string family_name(ModelFamily f) {
    switch (f) {
    case ModelFamily::Multi: return "multi";
    case ModelFamily::WindOnly: return "wind-only";
    case ModelFamily::PrecipOnly: return "precip-only";
    }
    throw ConfigError("unknown model family");
}

inline ModelFamily family_from_name(const std::string& s) {
    if (s == "multi") return ModelFamily::Multi;
    if (s == "wind-only") return ModelFamily::WindOnly;
    if (s == "precip-only") return ModelFamily::PrecipOnly;
    throw ConfigError("unknown model family '" + s + "' (expected multi|wind-only|precip-only)");
}

/// Hazard labels receiving a vulnerability coefficient under a family.
inline std::vector<std::string> family_hazards(ModelFamily f) {
    switch (f) {
    case ModelFamily::Multi: return {"wind", "precip"};
    case ModelFamily::WindOnly: return {"wind"};
    case ModelFamily::PrecipOnly: return {"precip"};
    }
    throw ConfigError("unknown model family");
}

/// Parameter-vector layout: one beta per family hazard, then gamma, sigma2.
inline std::vector<std::string> family_param_names(ModelFamily f) {
    std::vector<std::string> names;
    for (const auto& h : family_hazards(f)) names.push_back("beta_" + h);
    names.push_back("gamma");
    names.push_back("sigma2");
    return names;
}

/// TC MH-BHM priors: beta ~ Gam(5, 1) per hazard, gamma ~ U(5, 15),
/// sigma2 ~ Gam(2, 0.5), shape-rate convention.
inline PriorSpec tc_default_priors(ModelFamily f) {
    PriorSpec spec;
    for (const auto& h : family_hazards(f)) spec.add("beta_" + h, GammaPrior{5.0, 1.0});
    spec.add("gamma", UniformPrior{5.0, 15.0});
    spec.add("sigma2", GammaPrior{2.0, 0.5});
    return spec;
}

/// Vulnerability model corresponding to a parameter vector under a family.
inline VulnerabilityModel family_vulnerability(ModelFamily f, const Eigen::VectorXd& theta) {
    const auto hazards = family_hazards(f);
    const auto b = static_cast<Eigen::Index>(hazards.size());
    Eigen::VectorXd beta = theta.head(b);
    return LogisticModel{LogisticVulnParams{theta[b], std::move(beta), hazards}};
}

// ---------------------------------------------------------------------------
// Log posterior over (beta, gamma, sigma2)
// ---------------------------------------------------------------------------

/// Log posterior of the TC model on a catalog. Hazard surfaces and exposure
/// are flattened once at construction; evaluating a parameter vector is a
/// dense matrix-vector product plus a sigmoid pass. The per-event damage
/// means are cached against the (beta, gamma) block, so sigma2-only moves
/// skip the spatial sum.
class TcLogPosterior {
public:
    TcLogPosterior(const EventCatalog& catalog, ModelFamily family, PriorSpec priors)
        : family_(family), priors_(std::move(priors)) {
        catalog.validate();
        const auto expected_names = family_param_names(family);
        if (priors_.names() != expected_names)
            throw ConfigError("TcLogPosterior: prior spec does not match family parameter layout");

        const auto hazards = family_hazards(family);
        const int n_beta = static_cast<int>(hazards.size());
        const int n_events = static_cast<int>(catalog.events.size());
        const int n_cells = catalog.grid.size();
        if (n_events == 0) throw DataError("TcLogPosterior: catalog has no events");

        auto data = std::make_shared<Data>();
        data->n_beta = n_beta;
        data->n_events = n_events;
        data->n_cells = n_cells;
        data->hazards_stacked.resize(static_cast<Eigen::Index>(n_events) * n_cells, n_beta);
        data->log_damage.resize(n_events);
        data->exposure = catalog.exposure.values;
        for (int e = 0; e < n_events; ++e) {
            const auto& ev = catalog.events[static_cast<std::size_t>(e)];
            if (!ev.observed_damage)
                throw DataError("TcLogPosterior: event '" + ev.event_id + "' has no observed damage");
            data->log_damage[e] = std::log(*ev.observed_damage);
            for (int j = 0; j < n_beta; ++j)
                data->hazards_stacked.block(static_cast<Eigen::Index>(e) * n_cells, j, n_cells, 1) =
                    ev.hazards.field(hazards[static_cast<std::size_t>(j)]);
        }
        data_ = std::move(data);
    }

    const std::vector<std::string>& param_names() const { return priors_.names(); }
    ModelFamily family() const { return family_; }
    const PriorSpec& priors() const { return priors_; }

    int dim() const { return priors_.size(); }

    /// Sum of normal log densities of log damages; requires all damage means
    /// positive (guaranteed here by exposure >= 0 and sigmoid > 0 unless
    /// exposure is identically zero).
    double log_likelihood(const Eigen::VectorXd& theta) const {
        check_dim(theta);
        const double sigma2 = theta[dim() - 1];
        if (!(sigma2 > 0.0)) return -std::numeric_limits<double>::infinity();
        const Eigen::VectorXd& log_means = log_means_for(theta);
        double ll = 0.0;
        const double norm = -0.5 * std::log(2.0 * 3.14159265358979323846 * sigma2);
        for (int e = 0; e < data_->n_events; ++e) {
            const double r = data_->log_damage[e] - log_means[e];
            ll += norm - r * r / (2.0 * sigma2);
        }
        return ll;
    }

    double operator()(const Eigen::VectorXd& theta) const {
        check_dim(theta);
        const double lp = log_prior(theta, priors_);
        if (lp == -std::numeric_limits<double>::infinity()) return lp;
        return lp + log_likelihood(theta);
    }

private:
    struct Data {
        Eigen::MatrixXd hazards_stacked; // (n_events * n_cells) x n_beta
        Eigen::VectorXd exposure;        // n_cells
        Eigen::VectorXd log_damage;      // n_events
        int n_beta = 0;
        int n_events = 0;
        int n_cells = 0;
    };

    void check_dim(const Eigen::VectorXd& theta) const {
        if (theta.size() != dim())
            throw ConfigError("TcLogPosterior: parameter vector has wrong length");
    }

    const Eigen::VectorXd& log_means_for(const Eigen::VectorXd& theta) const {
        const int nb = data_->n_beta;
        const Eigen::VectorXd bg = theta.head(nb + 1);
        if (cache_valid_ && bg == cached_bg_) return cached_log_means_;
        const Eigen::VectorXd beta = theta.head(nb);
        const double gamma = theta[nb];
        Eigen::ArrayXd score = (data_->hazards_stacked * beta).array() - gamma;
        // stable sigmoid over the stacked score vector
        Eigen::ArrayXd v(score.size());
        for (Eigen::Index i = 0; i < score.size(); ++i) v[i] = stable_sigmoid(score[i]);
        cached_log_means_.resize(data_->n_events);
        for (int e = 0; e < data_->n_events; ++e) {
            const double m =
                data_->exposure.dot(v.segment(static_cast<Eigen::Index>(e) * data_->n_cells,
                                              data_->n_cells).matrix());
            if (!(m > 0.0))
                throw NumericalError("TcLogPosterior: degenerate zero damage mean for event index " +
                                     std::to_string(e));
            cached_log_means_[e] = std::log(m);
        }
        cached_bg_ = bg;
        cache_valid_ = true;
        return cached_log_means_;
    }

    ModelFamily family_;
    PriorSpec priors_;
    std::shared_ptr<const Data> data_;
    mutable Eigen::VectorXd cached_bg_;
    mutable Eigen::VectorXd cached_log_means_;
    mutable bool cache_valid_ = false;
};

// ---------------------------------------------------------------------------
// Metropolis-Hastings
// ---------------------------------------------------------------------------

/// One random-walk MH transition: every component moves by an independent
/// U(-half_width, +half_width) increment, accepted with probability
/// min(1, posterior ratio) computed in log space. theta and log_post are
/// updated in place on acceptance; returns true on acceptance.
template <typename LogTarget>
bool mh_step(Eigen::VectorXd& theta, double& log_post, LogTarget&& target, double half_width,
             SplitMix64& rng) {
    Eigen::VectorXd proposal = theta;
    for (Eigen::Index i = 0; i < proposal.size(); ++i)
        proposal[i] += rng.uniform(-half_width, half_width);
    const double lp_prop = target(proposal);
    const double u = rng.next_double();
    // log u < -inf is never true, so out-of-support proposals always reject
    if (std::log(u) < lp_prop - log_post) {
        theta = std::move(proposal);
        log_post = lp_prop;
        return true;
    }
    return false;
}

struct ChainResult {
    Eigen::MatrixXd draws; // n_iter x dim, row 0 = initial state
    double acceptance_rate = 0.0;
};

/// Runs one chain of n_iter recorded states (the initial state counts as
/// the first). Deterministic given the RNG state.
template <typename LogTarget>
ChainResult run_chain(LogTarget&& target, const Eigen::VectorXd& init, int n_iter,
                      double half_width, SplitMix64& rng) {
    if (n_iter < 1) throw ConfigError("run_chain: n_iter must be positive");
    if (!(half_width > 0.0)) throw ConfigError("run_chain: proposal half-width must be positive");
    double lp = target(init);
    if (!std::isfinite(lp))
        throw ConfigError("run_chain: initial value has non-finite log posterior");
    ChainResult out;
    out.draws.resize(n_iter, init.size());
    out.draws.row(0) = init;
    Eigen::VectorXd theta = init;
    long accepted = 0;
    for (int t = 1; t < n_iter; ++t) {
        if (mh_step(theta, lp, target, half_width, rng)) ++accepted;
        out.draws.row(t) = theta;
    }
    out.acceptance_rate = n_iter > 1 ? static_cast<double>(accepted) / (n_iter - 1) : 0.0;
    return out;
}

// ---------------------------------------------------------------------------
// Multi-chain driver
// ---------------------------------------------------------------------------

struct McmcConfig {
    int n_chains = 3;
    int n_iter = 5000;
    int burn_in = 2000;
    double proposal_half_width = 0.5;
    std::vector<std::uint64_t> seeds;            // one per chain, distinct
    std::vector<Eigen::VectorXd> initial_values; // optional; else drawn from priors
    int workers = 1;                             // chains run in parallel when > 1
    int max_init_attempts = 200;

    void validate() const {
        if (n_chains < 1) throw ConfigError("McmcConfig: n_chains must be positive");
        if (n_iter < 1) throw ConfigError("McmcConfig: n_iter must be positive");
        if (burn_in < 0 || burn_in >= n_iter)
            throw ConfigError("McmcConfig: burn_in must satisfy 0 <= burn_in < n_iter");
        if (!(proposal_half_width > 0.0))
            throw ConfigError("McmcConfig: proposal half-width must be positive");
        if (static_cast<int>(seeds.size()) != n_chains)
            throw ConfigError("McmcConfig: one seed per chain required");
        for (std::size_t i = 0; i < seeds.size(); ++i)
            for (std::size_t j = i + 1; j < seeds.size(); ++j)
                if (seeds[i] == seeds[j]) throw ConfigError("McmcConfig: chain seeds must be distinct");
        if (!initial_values.empty() && static_cast<int>(initial_values.size()) != n_chains)
            throw ConfigError("McmcConfig: one initial value per chain when given");
    }

    /// Convenience: per-chain seeds derived from one master seed.
    static std::vector<std::uint64_t> derive_chain_seeds(std::uint64_t master, int n_chains) {
        std::vector<std::uint64_t> seeds;
        for (int k = 0; k < n_chains; ++k)
            seeds.push_back(derive_seed(master, 100, static_cast<std::uint64_t>(k)));
        return seeds;
    }
};

struct Provenance {
    std::string catalog_id;
    std::string model_family;
    std::string config_hash;
    std::vector<std::string> hazard_names;        // training labels
    std::vector<Normalization> normalization;     // training constants
};

struct PosteriorSamples {
    std::vector<std::string> param_names;
    std::vector<Eigen::MatrixXd> chains; // each n_iter x P
    int burn_in = 0;
    std::vector<double> acceptance_rates;
    Provenance provenance;

    int n_chains() const { return static_cast<int>(chains.size()); }
    int n_iter() const { return chains.empty() ? 0 : static_cast<int>(chains.front().rows()); }
    int n_params() const { return static_cast<int>(param_names.size()); }
    int post_burn_in_length() const { return n_iter() - burn_in; }

    void validate() const {
        if (chains.empty()) throw ConfigError("PosteriorSamples: no chains");
        for (const auto& c : chains)
            if (c.rows() != n_iter() || c.cols() != n_params())
                throw ConfigError("PosteriorSamples: ragged chain matrices");
        if (burn_in < 0 || burn_in >= n_iter())
            throw ConfigError("PosteriorSamples: burn_in out of range");
        if (acceptance_rates.size() != chains.size())
            throw ConfigError("PosteriorSamples: one acceptance rate per chain required");
        for (double a : acceptance_rates)
            if (a < 0.0 || a > 1.0) throw ConfigError("PosteriorSamples: acceptance rate outside [0, 1]");
    }

    /// Post-burn-in draws of all chains stacked in chain order.
    Eigen::MatrixXd pooled() const {
        const int keep = post_burn_in_length();
        Eigen::MatrixXd out(static_cast<Eigen::Index>(keep) * n_chains(), n_params());
        for (int k = 0; k < n_chains(); ++k)
            out.middleRows(static_cast<Eigen::Index>(k) * keep, keep) =
                chains[static_cast<std::size_t>(k)].bottomRows(keep);
        return out;
    }
};

namespace detail {

inline Eigen::VectorXd draw_initial_value(const PriorSpec& priors, SplitMix64& rng) {
    Eigen::VectorXd theta(priors.size());
    for (int i = 0; i < priors.size(); ++i) theta[i] = prior_sample(priors.prior(i), rng);
    return theta;
}

} // namespace detail

/// Runs config.n_chains independent MH chains over the TC posterior. Each
/// chain owns its RNG (seeded from config.seeds) and its own evaluator
/// cache; the catalog data is shared read-only, so chains may run in
/// parallel without changing any result.
inline PosteriorSamples run_mcmc(const EventCatalog& catalog, ModelFamily family,
                                 const PriorSpec& priors, const McmcConfig& config) {
    config.validate();
    TcLogPosterior shared_target(catalog, family, priors);

    PosteriorSamples out;
    out.param_names = family_param_names(family);
    out.burn_in = config.burn_in;
    out.chains.resize(static_cast<std::size_t>(config.n_chains));
    out.acceptance_rates.resize(static_cast<std::size_t>(config.n_chains));
    out.provenance.catalog_id = catalog.catalog_id;
    out.provenance.model_family = family_name(family);
    out.provenance.hazard_names = catalog.hazard_names;
    out.provenance.normalization = catalog.normalization;

    std::vector<std::string> chain_errors(static_cast<std::size_t>(config.n_chains));
    auto run_one = [&](int k) {
        try {
            TcLogPosterior target = shared_target; // private cache per chain
            SplitMix64 rng(config.seeds[static_cast<std::size_t>(k)]);
            Eigen::VectorXd init;
            if (!config.initial_values.empty()) {
                init = config.initial_values[static_cast<std::size_t>(k)];
                if (!std::isfinite(target(init)))
                    throw ConfigError("initial value has non-finite log posterior");
            } else {
                bool found = false;
                for (int attempt = 0; attempt < config.max_init_attempts; ++attempt) {
                    init = detail::draw_initial_value(priors, rng);
                    if (std::isfinite(target(init))) {
                        found = true;
                        break;
                    }
                }
                if (!found)
                    throw ConfigError("no finite-posterior initial value found in " +
                                      std::to_string(config.max_init_attempts) + " prior draws");
            }
            ChainResult res =
                run_chain(target, init, config.n_iter, config.proposal_half_width, rng);
            out.chains[static_cast<std::size_t>(k)] = std::move(res.draws);
            out.acceptance_rates[static_cast<std::size_t>(k)] = res.acceptance_rate;
        } catch (const std::exception& e) {
            chain_errors[static_cast<std::size_t>(k)] = e.what();
        }
    };

    const int workers = std::max(1, config.workers);
    if (workers == 1 || config.n_chains == 1) {
        for (int k = 0; k < config.n_chains; ++k) run_one(k);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        const int n_threads = std::min(workers, config.n_chains);
        for (int t = 0; t < n_threads; ++t)
            pool.emplace_back([&]() {
                for (int k = next.fetch_add(1); k < config.n_chains; k = next.fetch_add(1))
                    run_one(k);
            });
        for (auto& th : pool) th.join();
    }

    for (int k = 0; k < config.n_chains; ++k)
        if (!chain_errors[static_cast<std::size_t>(k)].empty())
            throw Error("chain " + std::to_string(k) + " failed: " +
                        chain_errors[static_cast<std::size_t>(k)]);

    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

/// Classical Gelman-Rubin R-hat per parameter on post-burn-in draws:
/// R = sqrt((W(n-1)/n + B/n) / W). With split = true each chain is halved
/// first (split R-hat).
inline std::vector<double> gelman_rubin(const PosteriorSamples& samples, bool split = false) {
    samples.validate();
    std::vector<Eigen::MatrixXd> chains;
    const int keep = samples.post_burn_in_length();
    for (const auto& c : samples.chains) {
        Eigen::MatrixXd post = c.bottomRows(keep);
        if (split) {
            const int half = keep / 2;
            if (half < 1) throw ConfigError("gelman_rubin: chains too short to split");
            chains.push_back(post.topRows(half));
            chains.push_back(post.bottomRows(half));
        } else {
            chains.push_back(std::move(post));
        }
    }
    const int m = static_cast<int>(chains.size());
    if (m < 2)
        throw ConfigError("gelman_rubin: at least 2 chains required; rerun with n_chains >= 2");
    const auto n = static_cast<int>(chains.front().rows());
    if (n < 10) throw ConfigError("gelman_rubin: post-burn-in length must be at least 10");

    std::vector<double> rhat(static_cast<std::size_t>(samples.n_params()));
    for (int p = 0; p < samples.n_params(); ++p) {
        double grand = 0.0;
        std::vector<double> means(static_cast<std::size_t>(m));
        std::vector<double> vars(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k) {
            const auto col = chains[static_cast<std::size_t>(k)].col(p);
            const double mu = col.mean();
            means[static_cast<std::size_t>(k)] = mu;
            vars[static_cast<std::size_t>(k)] =
                (col.array() - mu).square().sum() / static_cast<double>(n - 1);
            grand += mu;
        }
        grand /= m;
        double b = 0.0;
        for (double mu : means) b += (mu - grand) * (mu - grand);
        b *= static_cast<double>(n) / (m - 1);
        double w = 0.0;
        for (double v : vars) w += v;
        w /= m;
        if (w <= 0.0) {
            rhat[static_cast<std::size_t>(p)] =
                b > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
            continue;
        }
        const double var_plus = (static_cast<double>(n - 1) / n) * w + b / n;
        rhat[static_cast<std::size_t>(p)] = std::sqrt(var_plus / w);
    }
    return rhat;
}

struct ParamSummary {
    std::string name;
    double mean = 0.0;
    double median = 0.0;
    double sd = 0.0;
    double q025 = 0.0;
    double q975 = 0.0;
    double rhat = std::numeric_limits<double>::quiet_NaN();
    double ess = std::numeric_limits<double>::quiet_NaN();
};

struct DiagnosticsReport {
    std::vector<ParamSummary> params;
    bool rhat_available = false;

    const ParamSummary& for_param(const std::string& name) const {
        for (const auto& p : params)
            if (p.name == name) return p;
        throw ConfigError("DiagnosticsReport: unknown parameter '" + name + "'");
    }
};

namespace detail {

/// Effective sample size via the initial positive sequence of autocovariances,
/// summed per chain.
inline double ess_proxy(const std::vector<Eigen::MatrixXd>& chains, int burn_in, int p) {
    double total = 0.0;
    for (const auto& c : chains) {
        const auto n = static_cast<int>(c.rows()) - burn_in;
        if (n < 4) continue;
        Eigen::ArrayXd x = c.col(p).tail(n).array();
        const double mu = x.mean();
        x -= mu;
        const double c0 = (x * x).sum() / n;
        if (c0 <= 0.0) continue;
        double rho_sum = 0.0;
        for (int lag = 1; lag < n - 1; ++lag) {
            const double ck = (x.head(n - lag) * x.tail(n - lag)).sum() / n;
            const double rho = ck / c0;
            if (rho <= 0.0) break;
            rho_sum += rho;
        }
        total += n / (1.0 + 2.0 * rho_sum);
    }
    return total;
}

} // namespace detail

/// Pooled post-burn-in summary per parameter: mean, median, SD, central 95%
/// bounds, R-hat (when >= 2 chains), and an effective-sample proxy.
inline DiagnosticsReport summarize(const PosteriorSamples& samples) {
    samples.validate();
    if (samples.post_burn_in_length() < 1) throw ConfigError("summarize: empty post-burn-in set");
    const Eigen::MatrixXd pooled = samples.pooled();

    DiagnosticsReport report;
    std::vector<double> rhat;
    if (samples.n_chains() >= 2 && samples.post_burn_in_length() >= 10) {
        rhat = gelman_rubin(samples);
        report.rhat_available = true;
    }
    for (int p = 0; p < samples.n_params(); ++p) {
        std::vector<double> x(pooled.col(p).data(), pooled.col(p).data() + pooled.rows());
        ParamSummary s;
        s.name = samples.param_names[static_cast<std::size_t>(p)];
        s.mean = mean(x);
        s.median = median(x);
        s.sd = sample_sd(x);
        if (x.size() >= 2) {
            std::sort(x.begin(), x.end());
            s.q025 = quantile_sorted(x, 0.025);
            s.q975 = quantile_sorted(x, 0.975);
        } else {
            s.q025 = s.q975 = x.front();
        }
        if (report.rhat_available) s.rhat = rhat[static_cast<std::size_t>(p)];
        s.ess = detail::ess_proxy(samples.chains, samples.burn_in, p);
        report.params.push_back(std::move(s));
    }
    return report;
}

} // namespace mhbhm
