#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "mhbhm/damage.hpp"
#include "mhbhm/errors.hpp"
#include "mhbhm/inference.hpp"
#include "mhbhm/predict.hpp"
#include "mhbhm/risk.hpp"
#include "mhbhm/synthetic.hpp"
#include "mhbhm/vulnerability.hpp"

namespace mhbhm::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Primitives
// ---------------------------------------------------------------------------

/// Shortest decimal representation that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s, const std::string& context) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw DataError(context + ": cannot parse '" + std::string(s) + "' as a number");
    return v;
}

inline long parse_long(std::string_view s, const std::string& context) {
    long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw DataError(context + ": cannot parse '" + std::string(s) + "' as an integer");
    return v;
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string fnv1a_hex(std::string_view s) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(s)));
    return std::string(buf);
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw DataError("write failed for '" + path.string() + "'");
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json read_json_file(const std::filesystem::path& path) {
    try {
        return json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw DataError("malformed JSON in '" + path.string() + "': " + e.what());
    }
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

/// Reads a CSV with the exact expected header; hands each data line's
/// fields to the row callback with its 1-based line number.
template <typename RowFn>
void read_csv(const std::filesystem::path& path, const std::string& expected_header, RowFn&& row) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) throw DataError("'" + path.string() + "': empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected_header)
        throw DataError("'" + path.string() + "': expected header '" + expected_header +
                        "', found '" + line + "'");
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        row(split_csv_line(line), line_no);
    }
}

// ---------------------------------------------------------------------------
// Vulnerability models
// ---------------------------------------------------------------------------

inline json vulnerability_to_json(const VulnerabilityModel& model) {
    json j;
    if (const auto* em = std::get_if<EmanuelModel>(&model)) {
        j["family"] = "emanuel";
        j["params"] = {{"v_thresh", em->params.v_thresh}, {"v_half", em->params.v_half}};
        j["hazard"] = em->hazard;
    } else if (const auto* ln = std::get_if<LogNormalModel>(&model)) {
        j["family"] = "lognormal";
        j["params"] = {{"eta", ln->params.median_log}, {"beta", ln->params.dispersion}};
        j["hazard"] = ln->hazard;
    } else {
        const auto& lg = std::get<LogisticModel>(model);
        j["family"] = "logistic";
        std::vector<double> beta(lg.params.coefficients.data(),
                                 lg.params.coefficients.data() + lg.params.coefficients.size());
        j["params"] = {{"gamma", lg.params.threshold}, {"beta", beta}};
        if (!lg.params.hazards.empty()) j["hazards"] = lg.params.hazards;
    }
    return j;
}

inline VulnerabilityModel vulnerability_from_json(const json& j) {
    const std::string family = j.at("family").get<std::string>();
    const json& p = j.at("params");
    if (family == "emanuel") {
        EmanuelModel m{{p.at("v_thresh").get<double>(), p.at("v_half").get<double>()},
                       j.value("hazard", "wind")};
        m.params.validate();
        return m;
    }
    if (family == "lognormal") {
        LogNormalModel m{{p.at("eta").get<double>(), p.at("beta").get<double>()},
                         j.value("hazard", "wind")};
        m.params.validate();
        return m;
    }
    if (family == "logistic") {
        const auto beta = p.at("beta").get<std::vector<double>>();
        Eigen::VectorXd coef(static_cast<Eigen::Index>(beta.size()));
        for (std::size_t i = 0; i < beta.size(); ++i) coef[static_cast<Eigen::Index>(i)] = beta[i];
        LogisticModel m{{p.at("gamma").get<double>(), std::move(coef),
                         j.value("hazards", std::vector<std::string>{})}};
        m.params.validate();
        return m;
    }
    throw DataError("unknown vulnerability family '" + family + "'");
}

// ---------------------------------------------------------------------------
// Catalog directory
// ---------------------------------------------------------------------------

inline json grid_sidecar_json(const EventCatalog& catalog) {
    json j;
    j["n_rows"] = catalog.grid.rows();
    j["n_cols"] = catalog.grid.cols();
    j["cell_size"] = catalog.grid.cell_size();
    j["origin"] = {catalog.grid.origin().x, catalog.grid.origin().y};
    json norms = json::array();
    for (std::size_t k = 0; k < catalog.hazard_names.size(); ++k)
        norms.push_back({{"name", catalog.hazard_names[k]},
                         {"offset", catalog.normalization[k].offset},
                         {"scale", catalog.normalization[k].scale}});
    j["normalization"] = norms;
    j["catalog_id"] = catalog.catalog_id;
    return j;
}

inline void write_catalog(const std::filesystem::path& dir, const EventCatalog& catalog,
                          const TruthInfo* truth = nullptr) {
    catalog.validate();
    std::filesystem::create_directories(dir / "events");
    write_text_file(dir / "grid.json", grid_sidecar_json(catalog).dump(2) + "\n");

    std::string exposure = "row,col,value\n";
    for (int i = 0; i < catalog.grid.size(); ++i)
        exposure += std::to_string(catalog.grid.row_of(i)) + "," +
                    std::to_string(catalog.grid.col_of(i)) + "," +
                    format_double(catalog.exposure.values[i]) + "\n";
    write_text_file(dir / "exposure.csv", exposure);

    std::string index = "event_id,observed_damage\n";
    for (const auto& ev : catalog.events) {
        index += ev.event_id + ",";
        if (ev.observed_damage) index += format_double(*ev.observed_damage);
        index += "\n";
        std::filesystem::create_directories(dir / "events" / ev.event_id);
        std::string hz = "row,col,hazard,value\n";
        for (std::size_t k = 0; k < catalog.hazard_names.size(); ++k) {
            const auto& field = ev.hazards.values[k];
            for (int i = 0; i < catalog.grid.size(); ++i)
                hz += std::to_string(catalog.grid.row_of(i)) + "," +
                      std::to_string(catalog.grid.col_of(i)) + "," + catalog.hazard_names[k] +
                      "," + format_double(field[i]) + "\n";
        }
        write_text_file(dir / "events" / ev.event_id / "hazards.csv", hz);
    }
    write_text_file(dir / "catalog.csv", index);

    if (truth) {
        json j;
        j["scenario"] = truth->scenario;
        j["gamma"] = truth->gamma;
        j["beta_wind"] = truth->beta_wind;
        j["beta_precip"] = truth->beta_precip;
        j["sigma2"] = truth->sigma2;
        j["seed"] = truth->seed;
        j["n_events"] = truth->n_events;
        write_text_file(dir / "truth.json", j.dump(2) + "\n");
    }
}

/// Reads one event's hazard surfaces; constants and labels come from the
/// catalog sidecar.
inline HazardFieldSet read_event_hazards(const std::filesystem::path& file, const SpatialGrid& grid,
                                         const std::vector<std::string>& hazard_names,
                                         const std::vector<Normalization>& constants,
                                         bool normalization_known) {
    std::vector<Eigen::VectorXd> values(hazard_names.size());
    std::vector<std::vector<bool>> seen(hazard_names.size());
    for (auto& v : values) v = Eigen::VectorXd::Zero(grid.size());
    for (auto& s : seen) s.assign(static_cast<std::size_t>(grid.size()), false);

    read_csv(file, "row,col,hazard,value", [&](const std::vector<std::string>& f, long line_no) {
        const std::string ctx = "'" + file.string() + "' line " + std::to_string(line_no);
        if (f.size() != 4) throw DataError(ctx + ": expected 4 fields");
        const long r = parse_long(f[0], ctx);
        const long c = parse_long(f[1], ctx);
        if (r < 0 || r >= grid.rows() || c < 0 || c >= grid.cols())
            throw DataError(ctx + ": cell (" + f[0] + "," + f[1] + ") outside grid");
        int hz = -1;
        for (std::size_t k = 0; k < hazard_names.size(); ++k)
            if (hazard_names[k] == f[2]) hz = static_cast<int>(k);
        if (hz < 0) throw DataError(ctx + ": unknown hazard label '" + f[2] + "'");
        const int i = grid.index(static_cast<int>(r), static_cast<int>(c));
        if (seen[static_cast<std::size_t>(hz)][static_cast<std::size_t>(i)])
            throw DataError(ctx + ": duplicate cell for hazard '" + f[2] + "'");
        seen[static_cast<std::size_t>(hz)][static_cast<std::size_t>(i)] = true;
        values[static_cast<std::size_t>(hz)][i] = parse_double(f[3], ctx);
    });
    for (std::size_t k = 0; k < hazard_names.size(); ++k)
        for (bool s : seen[k])
            if (!s)
                throw DataError("'" + file.string() + "': incomplete surface for hazard '" +
                                hazard_names[k] + "'");

    HazardFieldSet set(grid, hazard_names, std::move(values));
    set.normalization = constants;
    set.normalization_known = normalization_known;
    return set;
}

inline EventCatalog read_catalog(const std::filesystem::path& dir) {
    const json g = read_json_file(dir / "grid.json");
    const auto origin_arr = g.at("origin");
    SpatialGrid grid(g.at("n_rows").get<int>(), g.at("n_cols").get<int>(),
                     Point{origin_arr.at(0).get<double>(), origin_arr.at(1).get<double>()},
                     g.at("cell_size").get<double>());

    std::vector<std::string> hazard_names;
    std::vector<Normalization> constants;
    bool normalization_known = g.contains("normalization");
    if (normalization_known) {
        for (const auto& entry : g.at("normalization")) {
            hazard_names.push_back(entry.at("name").get<std::string>());
            constants.push_back(
                Normalization{entry.at("offset").get<double>(), entry.at("scale").get<double>()});
        }
    }
    if (hazard_names.empty())
        throw DataError("'" + (dir / "grid.json").string() + "': no hazards declared");

    Eigen::VectorXd exposure = Eigen::VectorXd::Constant(grid.size(),
                                                         std::numeric_limits<double>::quiet_NaN());
    read_csv(dir / "exposure.csv", "row,col,value",
             [&](const std::vector<std::string>& f, long line_no) {
                 const std::string ctx =
                     "'" + (dir / "exposure.csv").string() + "' line " + std::to_string(line_no);
                 if (f.size() != 3) throw DataError(ctx + ": expected 3 fields");
                 const long r = parse_long(f[0], ctx);
                 const long c = parse_long(f[1], ctx);
                 if (r < 0 || r >= grid.rows() || c < 0 || c >= grid.cols())
                     throw DataError(ctx + ": cell outside grid");
                 exposure[grid.index(static_cast<int>(r), static_cast<int>(c))] =
                     parse_double(f[2], ctx);
             });
    for (Eigen::Index i = 0; i < exposure.size(); ++i)
        if (std::isnan(exposure[i]))
            throw DataError("'" + (dir / "exposure.csv").string() + "': incomplete surface");

    EventCatalog catalog{grid, ExposureField(grid, std::move(exposure)), hazard_names, constants,
                         {}, g.value("catalog_id", std::string{})};

    read_csv(dir / "catalog.csv", "event_id,observed_damage",
             [&](const std::vector<std::string>& f, long line_no) {
                 const std::string ctx =
                     "'" + (dir / "catalog.csv").string() + "' line " + std::to_string(line_no);
                 if (f.size() != 2) throw DataError(ctx + ": expected 2 fields");
                 std::optional<double> damage;
                 if (!f[1].empty()) damage = parse_double(f[1], ctx);
                 HazardFieldSet hazards =
                     read_event_hazards(dir / "events" / f[0] / "hazards.csv", grid, hazard_names,
                                        constants, normalization_known);
                 catalog.events.push_back(EventRecord{f[0], std::move(hazards), damage});
             });
    catalog.validate();
    return catalog;
}

inline std::optional<TruthInfo> read_truth(const std::filesystem::path& dir) {
    if (!std::filesystem::exists(dir / "truth.json")) return std::nullopt;
    const json j = read_json_file(dir / "truth.json");
    TruthInfo t;
    t.scenario = j.at("scenario").get<std::string>();
    t.gamma = j.at("gamma").get<double>();
    t.beta_wind = j.at("beta_wind").get<double>();
    t.beta_precip = j.at("beta_precip").get<double>();
    t.sigma2 = j.at("sigma2").get<double>();
    t.seed = j.at("seed").get<std::uint64_t>();
    t.n_events = j.at("n_events").get<int>();
    return t;
}

// ---------------------------------------------------------------------------
// Priors
// ---------------------------------------------------------------------------

inline json priors_to_json(const PriorSpec& priors) {
    json j = json::object();
    for (int i = 0; i < priors.size(); ++i) {
        const auto& name = priors.names()[static_cast<std::size_t>(i)];
        const Prior& p = priors.prior(i);
        if (const auto* g = std::get_if<GammaPrior>(&p))
            j[name] = {{"type", "gamma"}, {"shape", g->shape}, {"rate", g->rate}};
        else {
            const auto& u = std::get<UniformPrior>(p);
            j[name] = {{"type", "uniform"}, {"lo", u.lo}, {"hi", u.hi}};
        }
    }
    return j;
}

inline PriorSpec priors_from_json(const json& j, const std::vector<std::string>& order) {
    PriorSpec spec;
    for (const auto& name : order) {
        const json& p = j.at(name);
        const std::string type = p.at("type").get<std::string>();
        if (type == "gamma")
            spec.add(name, GammaPrior{p.at("shape").get<double>(), p.at("rate").get<double>()});
        else if (type == "uniform")
            spec.add(name, UniformPrior{p.at("lo").get<double>(), p.at("hi").get<double>()});
        else
            throw DataError("unknown prior type '" + type + "'");
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Posterior directory
// ---------------------------------------------------------------------------

inline json diagnostics_to_json(const DiagnosticsReport& report) {
    json params = json::array();
    for (const auto& p : report.params) {
        json row;
        row["name"] = p.name;
        row["mean"] = p.mean;
        row["median"] = p.median;
        row["sd"] = p.sd;
        row["q2.5"] = p.q025;
        row["q97.5"] = p.q975;
        if (report.rhat_available) row["rhat"] = p.rhat;
        if (std::isfinite(p.ess)) row["ess"] = p.ess;
        params.push_back(std::move(row));
    }
    return json{{"rhat_available", report.rhat_available}, {"params", params}};
}

inline void write_posterior(const std::filesystem::path& dir, const PosteriorSamples& samples,
                            const PriorSpec& priors, const DiagnosticsReport* diagnostics = nullptr) {
    samples.validate();
    std::filesystem::create_directories(dir / "chains");
    json j;
    j["parameters"] = samples.param_names;
    j["model_family"] = samples.provenance.model_family;
    j["catalog_id"] = samples.provenance.catalog_id;
    j["config_hash"] = samples.provenance.config_hash;
    j["n_chains"] = samples.n_chains();
    j["n_iter"] = samples.n_iter();
    j["burn_in"] = samples.burn_in;
    j["acceptance_rates"] = samples.acceptance_rates;
    j["priors"] = priors_to_json(priors);
    json hazards = json::array();
    for (std::size_t k = 0; k < samples.provenance.hazard_names.size(); ++k)
        hazards.push_back({{"name", samples.provenance.hazard_names[k]},
                           {"offset", samples.provenance.normalization[k].offset},
                           {"scale", samples.provenance.normalization[k].scale}});
    j["hazards"] = hazards;
    if (diagnostics) j["diagnostics"] = diagnostics_to_json(*diagnostics);
    write_text_file(dir / "posterior.json", j.dump(2) + "\n");

    for (int k = 0; k < samples.n_chains(); ++k) {
        std::string csv = "iter";
        for (const auto& name : samples.param_names) csv += "," + name;
        csv += "\n";
        const auto& chain = samples.chains[static_cast<std::size_t>(k)];
        for (Eigen::Index t = 0; t < chain.rows(); ++t) {
            csv += std::to_string(t);
            for (Eigen::Index p = 0; p < chain.cols(); ++p) csv += "," + format_double(chain(t, p));
            csv += "\n";
        }
        write_text_file(dir / "chains" / (std::to_string(k) + ".csv"), csv);
    }
}

inline PosteriorSamples read_posterior(const std::filesystem::path& dir) {
    const json j = read_json_file(dir / "posterior.json");
    PosteriorSamples samples;
    samples.param_names = j.at("parameters").get<std::vector<std::string>>();
    samples.burn_in = j.at("burn_in").get<int>();
    samples.acceptance_rates = j.at("acceptance_rates").get<std::vector<double>>();
    samples.provenance.model_family = j.at("model_family").get<std::string>();
    samples.provenance.catalog_id = j.value("catalog_id", std::string{});
    samples.provenance.config_hash = j.value("config_hash", std::string{});
    for (const auto& entry : j.at("hazards")) {
        samples.provenance.hazard_names.push_back(entry.at("name").get<std::string>());
        samples.provenance.normalization.push_back(
            Normalization{entry.at("offset").get<double>(), entry.at("scale").get<double>()});
    }
    const int n_chains = j.at("n_chains").get<int>();
    const int n_iter = j.at("n_iter").get<int>();
    const int n_params = static_cast<int>(samples.param_names.size());

    std::string header = "iter";
    for (const auto& name : samples.param_names) header += "," + name;
    for (int k = 0; k < n_chains; ++k) {
        const auto file = dir / "chains" / (std::to_string(k) + ".csv");
        Eigen::MatrixXd chain(n_iter, n_params);
        long rows = 0;
        read_csv(file, header, [&](const std::vector<std::string>& f, long line_no) {
            const std::string ctx = "'" + file.string() + "' line " + std::to_string(line_no);
            if (static_cast<int>(f.size()) != n_params + 1)
                throw DataError(ctx + ": expected " + std::to_string(n_params + 1) + " fields");
            const long t = parse_long(f[0], ctx);
            if (t != rows) throw DataError(ctx + ": non-contiguous iteration index");
            if (rows >= n_iter) throw DataError(ctx + ": more rows than n_iter");
            for (int p = 0; p < n_params; ++p)
                chain(rows, p) = parse_double(f[static_cast<std::size_t>(p) + 1], ctx);
            ++rows;
        });
        if (rows != n_iter)
            throw DataError("'" + file.string() + "': expected " + std::to_string(n_iter) +
                            " draws, found " + std::to_string(rows));
        samples.chains.push_back(std::move(chain));
    }
    samples.validate();
    return samples;
}

// ---------------------------------------------------------------------------
// Predictive samples and risk reports
// ---------------------------------------------------------------------------

inline json predictive_summary_json(const PredictiveSample& sample,
                                    std::optional<double> truth = std::nullopt) {
    std::vector<double> sorted = sample.damages;
    std::sort(sorted.begin(), sorted.end());
    json j;
    j["event_id"] = sample.event_id;
    j["n_draws"] = sample.damages.size();
    j["mean"] = mean(sample.damages);
    j["median"] = median(sample.damages);
    j["central50"] = {quantile_sorted(sorted, 0.25), quantile_sorted(sorted, 0.75)};
    j["central90"] = {quantile_sorted(sorted, 0.05), quantile_sorted(sorted, 0.95)};
    j["posterior_hash"] = sample.posterior_hash;
    j["seed"] = sample.seed;
    if (truth) {
        j["truth"] = *truth;
        j["percentile_of_truth"] = percentile_of_truth(sample, *truth);
    }
    return j;
}

inline void write_predictive(const std::filesystem::path& dir, const PredictiveSample& sample,
                             std::optional<double> truth = std::nullopt) {
    std::filesystem::create_directories(dir);
    std::string csv = "damage\n";
    for (double d : sample.damages) csv += format_double(d) + "\n";
    write_text_file(dir / ("predictive_" + sample.event_id + ".csv"), csv);
    write_text_file(dir / ("predictive_" + sample.event_id + "_summary.json"),
                    predictive_summary_json(sample, truth).dump(2) + "\n");
}

/// Single-column damage CSV, as written by write_predictive.
inline std::vector<double> read_damage_column(const std::filesystem::path& file) {
    std::vector<double> out;
    read_csv(file, "damage", [&](const std::vector<std::string>& f, long line_no) {
        const std::string ctx = "'" + file.string() + "' line " + std::to_string(line_no);
        if (f.size() != 1) throw DataError(ctx + ": expected 1 field");
        out.push_back(parse_double(f[0], ctx));
    });
    if (out.empty()) throw DataError("'" + file.string() + "': no damage values");
    return out;
}

inline json risk_report_json(const RiskReport& report) {
    json j;
    j["alphas"] = report.alphas;
    j["thresholds"] = report.thresholds;
    j["over_weight"] = report.over_weight;
    if (report.truth_value) j["truth_value"] = *report.truth_value;
    auto model_json = [&](const ModelRisk& m) {
        json row;
        row["name"] = m.name;
        json var_a = json::array(), tvar_a = json::array(), fb_a = json::array();
        for (double a : report.alphas) {
            var_a.push_back(m.var_by_alpha.at(a));
            tvar_a.push_back(m.tvar_by_alpha.at(a));
            fb_a.push_back(m.tvar_fallback_by_alpha.at(a));
        }
        row["var"] = var_a;
        row["tvar"] = tvar_a;
        row["tvar_fallback"] = fb_a;
        if (!m.exceedance.empty()) row["exceedance"] = m.exceedance;
        if (m.wasserstein_to_truth) row["wasserstein"] = *m.wasserstein_to_truth;
        if (!m.dev_sym_by_alpha.empty()) {
            json ds = json::array(), dw = json::array(), da = json::array();
            for (double a : report.alphas) {
                ds.push_back(m.dev_sym_by_alpha.at(a));
                dw.push_back(m.dev_weighted_by_alpha.at(a));
                da.push_back(m.dev_asym_by_alpha.at(a));
            }
            row["dev_sym"] = ds;
            row["dev_weighted"] = dw;
            row["dev_asym"] = da;
        }
        return row;
    };
    json models = json::array();
    for (const auto& m : report.models) models.push_back(model_json(m));
    j["models"] = models;
    if (report.truth_metrics) j["truth_metrics"] = model_json(*report.truth_metrics);
    return j;
}

inline void write_risk_report(const std::filesystem::path& dir, const RiskReport& report) {
    std::filesystem::create_directories(dir);
    write_text_file(dir / "risk_report.json", risk_report_json(report).dump(2) + "\n");
    std::string csv = "model,threshold,prob\n";
    auto append = [&](const ModelRisk& m) {
        for (std::size_t t = 0; t < report.thresholds.size(); ++t)
            csv += m.name + "," + format_double(report.thresholds[t]) + "," +
                   format_double(m.exceedance[t]) + "\n";
    };
    for (const auto& m : report.models)
        if (!m.exceedance.empty()) append(m);
    if (report.truth_metrics && !report.truth_metrics->exceedance.empty())
        append(*report.truth_metrics);
    write_text_file(dir / "exceedance.csv", csv);
}

} // namespace mhbhm::io
