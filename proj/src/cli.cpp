// cli.cpp — Config parsing, scenario dispatch and table output

#include "kicked/cli.hpp"
#include "kicked/bath.hpp"
#include "kicked/dynamics.hpp"
#include "kicked/echo.hpp"
#include "kicked/errors.hpp"
#include "kicked/floquet.hpp"
#include "kicked/lindblad.hpp"
#include "kicked/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

namespace kicked::cli {

namespace {

using Row = std::vector<std::string>;
using Rows = std::vector<Row>;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::scientific << std::setprecision(12) << x;
    return os.str();
}

std::string fmt_plain(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    // Shortest text that reads back to the same double.
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

// A scenario failure that already knows its exit code and context.
struct ScenarioError : std::runtime_error {
    ScenarioError(const std::string& msg, int code) : std::runtime_error(msg), code(code) {}
    int code;
};

int classify(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return kConfigError;
    if (dynamic_cast<const InconsistentDataError*>(&e)) return kNumericError;
    if (dynamic_cast<const std::invalid_argument*>(&e)) return kConfigError;
    return kNumericError;
}

// --------------------------- Schema -----------------------------------------

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s{
        {"", {"schema_version", "scenario", "seed"}},
        {"model",
         {"T2", "tau_c", "A", "omega_cut", "beta", "omega0", "omega_ext", "Delta", "lambda", "T", "eta"}},
        {"sweep", {"parameter", "start", "stop", "points", "scale", "values"}},
        {"times", {"start", "stop", "points", "kick_limits"}},
        {"state", {"x1", "x2", "x3"}},
        {"ensemble", {"kind", "sigma", "halfwidth", "center", "samples", "weights", "draws"}},
        {"measurements", {"file"}},
        {"options", {"method", "coupling", "rel_tol"}},
    };
    return s;
}

double parse_number(const ConfigValue& v, const std::string& key) {
    const std::string t = trim(v.text);
    if (t == "inf" || t == "+inf") return kInf;
    try {
        std::size_t used = 0;
        const double x = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
        if (!std::isfinite(x)) throw std::invalid_argument(t);
        return x;
    } catch (const std::logic_error&) {
        throw ConfigError("'" + key + "': expected a number, got '" + v.text + "'", v.line);
    }
}

std::vector<double> parse_list(const ConfigValue& v, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(v.text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (trim(item).empty()) continue;
        out.push_back(parse_number({item, v.line}, key));
    }
    return out;
}

long parse_integer(const ConfigValue& v, const std::string& key) {
    const double x = parse_number(v, key);
    if (x != std::floor(x) || std::abs(x) > 1e15)
        throw ConfigError("'" + key + "': expected an integer, got '" + v.text + "'", v.line);
    return static_cast<long>(x);
}

const ConfigValue* find(const ConfigTable& t, const std::string& section, const std::string& key) {
    auto s = t.find(section);
    if (s == t.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
}

// --------------------------- Sweeps and grids -------------------------------

SweepSpec resolve_sweep(const ConfigTable& t) {
    SweepSpec sw;
    const ConfigValue* p = find(t, "sweep", "parameter");
    if (!p) throw ConfigError("[sweep] needs 'parameter'", t.at("sweep").begin()->second.line);
    sw.parameter = trim(p->text);
    if (const ConfigValue* v = find(t, "sweep", "values")) {
        sw.values = parse_list(*v, "values");
        if (sw.values.empty()) throw ConfigError("[sweep] 'values' is empty", v->line);
        return sw;
    }
    const ConfigValue* a = find(t, "sweep", "start");
    const ConfigValue* b = find(t, "sweep", "stop");
    const ConfigValue* n = find(t, "sweep", "points");
    if (!a || !b || !n) throw ConfigError("[sweep] needs 'values' or 'start', 'stop' and 'points'", p->line);
    const double start = parse_number(*a, "start"), stop = parse_number(*b, "stop");
    const long points = parse_integer(*n, "points");
    if (points < 1) throw ConfigError("[sweep] is empty: 'points' must be >= 1", n->line);
    if (!std::isfinite(start) || !std::isfinite(stop)) throw ConfigError("[sweep] range must be finite", a->line);
    std::string scale = "lin";
    if (const ConfigValue* s = find(t, "sweep", "scale")) scale = trim(s->text);
    if (scale != "lin" && scale != "log")
        throw ConfigError("[sweep] 'scale' must be lin or log", find(t, "sweep", "scale")->line);
    if (scale == "log" && !(start > 0.0 && stop > 0.0))
        throw ConfigError("[sweep] log scale needs a positive range", a->line);
    for (long i = 0; i < points; ++i) {
        const double f = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
        sw.values.push_back(scale == "log" ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start)))
                                           : start + f * (stop - start));
    }
    return sw;
}

std::vector<double> time_samples(const TimeGrid& g) {
    std::vector<double> ts;
    for (int i = 0; i < g.points; ++i)
        ts.push_back(g.points == 1 ? g.start : g.start + (g.stop - g.start) * i / (g.points - 1));
    return ts;
}

// --------------------------- Physics helpers --------------------------------

double need(const std::map<std::string, double>& m, const std::string& key) {
    auto it = m.find(key);
    if (it == m.end() || std::isnan(it->second)) throw ConfigError("[model] '" + key + "' is required");
    return it->second;
}

double get_or(const std::map<std::string, double>& m, const std::string& key, double fallback) {
    auto it = m.find(key);
    return it == m.end() || std::isnan(it->second) ? fallback : it->second;
}

bool is_perp(const RunConfig& c) {
    auto it = c.options.find("coupling");
    return it != c.options.end() && it->second == "perp";
}

double rel_tol(const RunConfig& c) {
    auto it = c.options.find("rel_tol");
    return it == c.options.end() ? 1e-10 : std::stod(it->second);
}

KickedModel tls_model(const std::map<std::string, double>& m) {
    const double Delta = get_or(m, "Delta", 0.0);
    return KickedModel(HermitianOperator(0.5 * Delta * sigma_z()), HermitianOperator(sigma_x()),
                       get_or(m, "lambda", 0.5 * std::numbers::pi), need(m, "T"));
}

LindbladGenerator tls_generator(const RunConfig& c, const std::map<std::string, double>& m) {
    const KickedModel model = tls_model(m);
    std::vector<HermitianOperator> couplings;
    std::vector<SpectralDensity> sds;
    if (is_perp(c)) {
        const SpectralDensity sd = SpectralDensity::phonon(need(m, "A"), need(m, "omega_cut"), get_or(m, "beta", kInf));
        couplings = {HermitianOperator(sigma_x()), HermitianOperator(sigma_y())};
        sds = {sd, sd};
    } else {
        couplings = {HermitianOperator(sigma_z())};
        sds = {SpectralDensity::lorentzian(need(m, "T2"), need(m, "tau_c"))};
    }
    return build_generator(harmonic_decomposition(model, couplings, 16), sds, rel_tol(c));
}

double closed_rate(const RunConfig& c, const std::map<std::string, double>& m) {
    if (auto it = m.find("eta"); it != m.end() && !std::isnan(it->second)) return it->second;
    if (is_perp(c)) {
        if (!std::isinf(get_or(m, "beta", kInf)) || get_or(m, "Delta", 0.0) != 0.0) return kNaN;
        return rate_perp_closed(kTwoPi / need(m, "T"), need(m, "A"), need(m, "omega_cut")).eta;
    }
    return rate_parallel_closed(need(m, "T"), need(m, "T2"), need(m, "tau_c")).eta;
}

// --------------------------- Scenarios --------------------------------------

struct Table {
    Row header;
    std::function<Rows(const std::map<std::string, double>&)> point;
};

Table rates_parallel(const RunConfig&) {
    return {{"Omega[rad/time]", "T[time]", "eta_par[1/time]", "gamma_par[1/time]", "eta_over_gamma[1]"},
            [](const std::map<std::string, double>& m) {
                const double T = need(m, "T");
                const double omega = kTwoPi / T;
                const double eta = rate_parallel_closed(T, need(m, "T2"), need(m, "tau_c")).eta;
                const double gamma = SpectralDensity::lorentzian(need(m, "T2"), need(m, "tau_c"))(omega);
                return Rows{{fmt(omega), fmt(T), fmt(eta), fmt(gamma), fmt(eta / gamma)}};
            }};
}

Table rates_perp(const RunConfig&) {
    return {{"Omega[rad/time]", "T[time]", "eta_perp[1/time]", "gamma_perp[1/time]", "eta_over_gamma[1]"},
            [](const std::map<std::string, double>& m) {
                const double T = need(m, "T");
                const double omega = kTwoPi / T;
                if (!std::isinf(get_or(m, "beta", kInf)))
                    throw ConfigError("rates-perp: the closed form is zero-temperature, beta must be inf");
                const double eta = rate_perp_closed(omega, need(m, "A"), need(m, "omega_cut")).eta;
                const double gamma = SpectralDensity::phonon(need(m, "A"), need(m, "omega_cut"))(omega);
                return Rows{{fmt(omega), fmt(T), fmt(eta), fmt(gamma), fmt(eta / gamma)}};
            }};
}

BlochVector initial_bloch(const std::map<std::string, double>& m) {
    return {get_or(m, "x1", 1.0), get_or(m, "x2", 0.0), get_or(m, "x3", 0.0)};
}

Table trajectory(const RunConfig& cfg) {
    const bool engine = cfg.options.count("method") && cfg.options.at("method") == "engine";
    const TimeGrid grid = cfg.times;
    const RunConfig* c = &cfg;
    return {{"t[time]", "kick_side", "x1[1]", "x2[1]", "x3[1]", "bloch_norm[1]"},
            [c, engine, grid](const std::map<std::string, double>& m) {
                const double T = need(m, "T");
                const double omega0 = need(m, "omega0");
                const double Delta = get_or(m, "Delta", 0.0);
                const DensityMatrix rho0 = density_from_bloch(initial_bloch(m));
                std::optional<LindbladGenerator> g;
                std::optional<KickedPropagator> u;
                double eta = kNaN;
                if (engine) {
                    g = tls_generator(*c, m);
                    u.emplace(tls_model(m));
                } else {
                    if (get_or(m, "lambda", 0.5 * std::numbers::pi) != 0.5 * std::numbers::pi)
                        throw ConfigError("trajectory: closed forms need lambda = pi/2; use method = engine");
                    eta = closed_rate(*c, m);
                    if (std::isnan(eta))
                        throw ConfigError("trajectory: no closed form for this transverse regime; use method = engine");
                }
                const TLSParams p = TLSParams::make(omega0, omega0 - Delta, T, engine ? 0.0 : eta);
                auto state = [&](double t, KickSide side) {
                    if (engine) return evolve_state(*u, *g, rho0, t, Frame::lab, {p.omega_ext, side});
                    return is_perp(*c) ? closed_form_perp(p, rho0, t, side) : closed_form_parallel(p, rho0, t, side);
                };
                Rows rows;
                auto emit = [&](double t, KickSide side) {
                    const BlochVector x = bloch_from_density(state(t, side));
                    rows.push_back({fmt(t), side == KickSide::after ? "after" : "before", fmt(x.x1), fmt(x.x2),
                                    fmt(x.x3), fmt(x.norm())});
                };
                for (double t : time_samples(grid)) {
                    const KickClock k = split_time(t, T);
                    if (grid.both_kick_limits && k.s == 0.0 && k.n >= 1) emit(t, KickSide::before);
                    emit(t, KickSide::after);
                }
                return rows;
            }};
}

DetuningEnsemble make_ensemble(const RunConfig& c) {
    const auto& e = c.ensemble;
    auto num = [&](const std::string& k, double fallback) {
        auto it = e.find(k);
        return it == e.end() ? fallback : std::stod(it->second);
    };
    const std::string kind = e.count("kind") ? e.at("kind") : "gaussian";
    DetuningEnsemble ens = DetuningEnsemble::gaussian(0.0);
    if (kind == "gaussian") {
        ens = DetuningEnsemble::gaussian(num("sigma", 0.0), num("center", 0.0), c.seed);
    } else if (kind == "uniform") {
        ens = DetuningEnsemble::uniform(num("halfwidth", 0.0), num("center", 0.0), c.seed);
    } else if (kind == "discrete") {
        auto list = [&](const std::string& k) {
            std::vector<double> out;
            if (!e.count(k)) return out;
            std::stringstream ss(e.at(k));
            std::string item;
            while (std::getline(ss, item, ','))
                if (!trim(item).empty()) out.push_back(std::stod(item));
            return out;
        };
        ens = DetuningEnsemble::discrete(list("samples"), list("weights"), c.seed);
    } else {
        throw ConfigError("[ensemble] 'kind' must be gaussian, uniform or discrete");
    }
    if (e.count("draws")) ens = ens.sampled(static_cast<std::size_t>(num("draws", 0.0)));
    return ens;
}

Table echo(const RunConfig& cfg) {
    const RunConfig* c = &cfg;
    return {{"t[time]", "avg_cos[1]", "avg_sin[1]", "x1[1]", "x2[1]"}, [c](const std::map<std::string, double>& m) {
                const DetuningEnsemble ens = make_ensemble(*c);
                const double T = need(m, "T");
                const double omega_ext = need(m, "omega_ext");
                const double eta =
                    get_or(m, "eta", kNaN) >= 0.0 ? m.at("eta") : rate_parallel_closed(T, need(m, "T2"), need(m, "tau_c")).eta;
                const TLSParams p = TLSParams::make(omega_ext + ens.mean(), omega_ext, T, eta);
                const EchoSignal s = echo_signal(ens, p, initial_bloch(m), time_samples(c->times));
                Rows rows;
                for (std::size_t i = 0; i < s.times.size(); ++i)
                    rows.push_back({fmt(s.times[i]), fmt(s.avg_cos[i]), fmt(s.avg_sin[i]), fmt(s.x1[i]), fmt(s.x2[i])});
                return rows;
            }};
}

Table generator_audit(const RunConfig& cfg) {
    const RunConfig* c = &cfg;
    return {{"Omega[rad/time]", "T[time]", "eta_closed[1/time]", "eta_generator[1/time]", "rel_err_generator[1]",
             "eta_series[1/time]", "rel_err_series[1]", "population_over_coherence[1]", "trace_defect[1]",
             "choi_min_eig[1]", "block_defect[1/time]", "q_max_used[1]"},
            [c](const std::map<std::string, double>& m) {
                const double T = need(m, "T");
                const double omega = kTwoPi / T;
                const double closed = closed_rate(*c, m);
                const LindbladGenerator g = tls_generator(*c, m);
                const TlsDecayRates r = tls_decay_rates(g);
                double series = kNaN;
                if (is_perp(*c)) {
                    if (!std::isnan(closed)) series = series_rate_perp(omega, need(m, "A"), need(m, "omega_cut")).rate;
                } else {
                    series = series_rate_parallel_adaptive(T, need(m, "T2"), need(m, "tau_c"), 1e-12).rate;
                }
                const CptpReport rep = verify_cptp(semigroup(g, r.coherence > 0.0 ? 1.0 / r.coherence : 1.0));
                return Rows{{fmt(omega), fmt(T), fmt(closed), fmt(r.coherence),
                             fmt(std::abs(r.coherence - closed) / closed), fmt(series),
                             fmt(std::abs(series - closed) / closed), fmt(r.population_difference / r.coherence),
                             fmt(rep.trace_defect), fmt(rep.choi_min_eig), fmt(block_coupling_defect(g)),
                             fmt(g.truncation.q_max_used)}};
            }};
}

Table extract_tauc(const RunConfig& cfg) {
    const RunConfig* c = &cfg;
    return {{"T2[time]", "tau_c[time]", "residual[1]", "degenerate"}, [c](const std::map<std::string, double>&) {
                const TauCEstimate e = extract_tau_c(load_measurements(c->measurements));
                return Rows{{fmt(e.T2), fmt(e.tau_c), fmt(e.residual), e.degenerate ? "yes" : "no"}};
            }};
}

// Evaluates f on every index with a small worker pool; results stay in order.
Rows evaluate_points(const std::vector<std::map<std::string, double>>& points, const Table& table,
                     const std::vector<std::string>& labels, const std::string& scenario) {
    std::vector<Rows> results(points.size());
    std::vector<std::exception_ptr> errors(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
            try {
                results[i] = table.point(points[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t n_threads =
        std::max<std::size_t>(1, std::min<std::size_t>(points.size(), std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    Rows out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (errors[i]) {
            try {
                std::rethrow_exception(errors[i]);
            } catch (const std::exception& e) {
                const std::string where = labels[i].empty() ? "" : " at " + labels[i];
                throw ScenarioError("scenario " + scenario + where + ": " + e.what(), classify(e));
            }
        }
        for (auto& r : results[i]) out.push_back(std::move(r));
    }
    return out;
}

} // namespace

// --------------------------- Parsing ----------------------------------------

ConfigTable parse_config(std::istream& in) {
    ConfigTable table;
    table[""];
    std::string section;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto c = line.find_first_of("#;"); c != std::string::npos) line.erase(c);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("malformed section header '" + line + "'", lineno);
            section = trim(line.substr(1, line.size() - 2));
            if (!schema().count(section)) throw ConfigError("unknown section [" + section + "]", lineno);
            if (table.count(section) && !table[section].empty())
                throw ConfigError("section [" + section + "] appears twice", lineno);
            table[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value', got '" + line + "'", lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("missing key before '='", lineno);
        if (!schema().at(section).count(key)) {
            const std::string where = section.empty() ? "top level" : "[" + section + "]";
            throw ConfigError("unknown key '" + key + "' in " + where, lineno);
        }
        if (table[section].count(key)) throw ConfigError("duplicate key '" + key + "'", lineno);
        table[section][key] = {value, lineno};
    }
    return table;
}

Scenario parse_scenario(const std::string& name) {
    static const std::map<std::string, Scenario> names{
        {"rates-parallel", Scenario::rates_parallel}, {"rates-perp", Scenario::rates_perp},
        {"trajectory", Scenario::trajectory},         {"echo", Scenario::echo},
        {"generator-audit", Scenario::generator_audit}, {"extract-tauc", Scenario::extract_tauc},
    };
    auto it = names.find(name);
    if (it == names.end()) throw ConfigError("unknown scenario '" + name + "'");
    return it->second;
}

std::string scenario_name(Scenario s) {
    switch (s) {
    case Scenario::rates_parallel: return "rates-parallel";
    case Scenario::rates_perp: return "rates-perp";
    case Scenario::trajectory: return "trajectory";
    case Scenario::echo: return "echo";
    case Scenario::generator_audit: return "generator-audit";
    case Scenario::extract_tauc: return "extract-tauc";
    }
    return "?";
}

RunConfig resolve_config(const ConfigTable& t, const std::filesystem::path& base) {
    RunConfig c;
    const ConfigValue* ver = find(t, "", "schema_version");
    if (!ver) throw ConfigError("missing 'schema_version'");
    c.schema_version = static_cast<int>(parse_integer(*ver, "schema_version"));
    if (c.schema_version != kSchemaVersion)
        throw ConfigError("unsupported schema_version " + std::to_string(c.schema_version) + " (expected " +
                              std::to_string(kSchemaVersion) + ")",
                          ver->line);
    const ConfigValue* sc = find(t, "", "scenario");
    if (!sc) throw ConfigError("missing 'scenario'");
    try {
        c.scenario = parse_scenario(trim(sc->text));
    } catch (const ConfigError& e) {
        throw ConfigError(e.what(), sc->line);
    }
    if (const ConfigValue* s = find(t, "", "seed")) {
        const long seed = parse_integer(*s, "seed");
        if (seed < 0) throw ConfigError("'seed' must be >= 0", s->line);
        c.seed = static_cast<std::uint64_t>(seed);
    }

    if (auto it = t.find("model"); it != t.end())
        for (const auto& [k, v] : it->second) {
            const double x = parse_number(v, k);
            if (k == "eta") {
                if (!(x >= 0.0)) throw ConfigError("[model] 'eta' must be >= 0", v.line);
            } else if (k != "Delta" && k != "omega_ext" && k != "omega0" && !(x > 0.0)) {
                throw ConfigError("[model] '" + k + "' must be positive", v.line);
            }
            c.model[k] = x;
        }
    if (auto it = t.find("state"); it != t.end())
        for (const auto& [k, v] : it->second) c.model[k] = parse_number(v, k);

    // Resolve the omega0 / omega_ext / Delta triple.
    auto& m = c.model;
    const bool h0 = m.count("omega0"), he = m.count("omega_ext"), hd = m.count("Delta");
    if (h0 && he && hd && std::abs(m["omega0"] - m["omega_ext"] - m["Delta"]) > 1e-12 * (1.0 + std::abs(m["omega0"])))
        throw ConfigError("[model] Delta must equal omega0 - omega_ext", find(t, "model", "Delta")->line);
    if (h0 && he && !hd) m["Delta"] = m["omega0"] - m["omega_ext"];
    if (h0 && !he) {
        if (!hd) m["Delta"] = 0.0;
        m["omega_ext"] = m["omega0"] - m["Delta"];
    }
    if (!h0 && he) {
        if (!hd && c.scenario != Scenario::echo) m["Delta"] = 0.0;
        if (m.count("Delta")) m["omega0"] = m["omega_ext"] + m["Delta"];
    }

    for (const std::string key : {"method", "coupling", "rel_tol"})
        if (const ConfigValue* v = find(t, "options", key)) c.options[key] = trim(v->text);
    if (c.options.count("method") && c.options["method"] != "closed-form" && c.options["method"] != "engine")
        throw ConfigError("[options] 'method' must be closed-form or engine", find(t, "options", "method")->line);
    if (c.options.count("coupling") && c.options["coupling"] != "parallel" && c.options["coupling"] != "perp")
        throw ConfigError("[options] 'coupling' must be parallel or perp", find(t, "options", "coupling")->line);
    if (c.options.count("rel_tol") && !(parse_number(*find(t, "options", "rel_tol"), "rel_tol") > 0.0))
        throw ConfigError("[options] 'rel_tol' must be positive", find(t, "options", "rel_tol")->line);

    if (auto it = t.find("ensemble"); it != t.end())
        for (const auto& [k, v] : it->second) {
            if (k != "kind") {
                if (k == "samples" || k == "weights") parse_list(v, k);
                else if (k == "draws" && parse_integer(v, k) < 1) throw ConfigError("'draws' must be >= 1", v.line);
                else parse_number(v, k);
            }
            c.ensemble[k] = trim(v.text);
        }

    if (t.count("sweep")) c.sweep = resolve_sweep(t);

    const bool needs_times = c.scenario == Scenario::trajectory || c.scenario == Scenario::echo;
    if (needs_times) {
        const ConfigValue* b = find(t, "times", "stop");
        const ConfigValue* n = find(t, "times", "points");
        if (!b || !n) throw ConfigError("[times] needs 'stop' and 'points'");
        if (const ConfigValue* a = find(t, "times", "start")) c.times.start = parse_number(*a, "start");
        c.times.stop = parse_number(*b, "stop");
        const long pts = parse_integer(*n, "points");
        if (pts < 1) throw ConfigError("[times] 'points' must be >= 1", n->line);
        c.times.points = static_cast<int>(pts);
        if (!(c.times.start >= 0.0) || !(c.times.stop > c.times.start || (pts == 1 && c.times.stop >= c.times.start)))
            throw ConfigError("[times] need 0 <= start < stop", b->line);
        if (const ConfigValue* k = find(t, "times", "kick_limits")) {
            const std::string v = trim(k->text);
            if (v != "after" && v != "both") throw ConfigError("[times] 'kick_limits' must be after or both", k->line);
            c.times.both_kick_limits = v == "both";
        }
    }

    const bool needs_sweep = c.scenario == Scenario::rates_parallel || c.scenario == Scenario::rates_perp ||
                             c.scenario == Scenario::generator_audit;
    // Without a sweep the rate scenarios evaluate the single [model] T.
    if (needs_sweep && c.sweep) {
        if (c.sweep->parameter != "Omega" && c.sweep->parameter != "T")
            throw ConfigError("[sweep] 'parameter' must be Omega or T for " + scenario_name(c.scenario),
                              find(t, "sweep", "parameter")->line);
    }
    if (c.sweep) {
        const std::string& p = c.sweep->parameter;
        if (p != "Omega" && !schema().at("model").count(p) && !schema().at("state").count(p))
            throw ConfigError("[sweep] unknown parameter '" + p + "'", find(t, "sweep", "parameter")->line);
        for (double v : c.sweep->values)
            if ((p == "Omega" || p == "T") && !(v > 0.0))
                throw ConfigError("[sweep] " + p + " values must be positive", find(t, "sweep", "parameter")->line);
    }

    if (c.scenario == Scenario::extract_tauc) {
        const ConfigValue* f = find(t, "measurements", "file");
        if (!f) throw ConfigError("extract-tauc needs [measurements] file");
        std::filesystem::path p = trim(f->text);
        c.measurements = p.is_relative() ? base / p : p;
    }

    // Header echo of everything that was resolved.
    c.echo_lines.push_back("schema_version = " + std::to_string(c.schema_version));
    c.echo_lines.push_back("scenario = " + scenario_name(c.scenario));
    c.echo_lines.push_back("seed = " + std::to_string(c.seed));
    for (const auto& [k, v] : c.model) c.echo_lines.push_back("model." + k + " = " + fmt_plain(v));
    for (const auto& [k, v] : c.options) c.echo_lines.push_back("options." + k + " = " + v);
    for (const auto& [k, v] : c.ensemble) c.echo_lines.push_back("ensemble." + k + " = " + v);
    if (c.sweep) {
        c.echo_lines.push_back("sweep.parameter = " + c.sweep->parameter);
        c.echo_lines.push_back("sweep.points = " + std::to_string(c.sweep->values.size()));
    }
    if (needs_times) {
        c.echo_lines.push_back("times.start = " + fmt_plain(c.times.start));
        c.echo_lines.push_back("times.stop = " + fmt_plain(c.times.stop));
        c.echo_lines.push_back("times.points = " + std::to_string(c.times.points));
        c.echo_lines.push_back(std::string("times.kick_limits = ") + (c.times.both_kick_limits ? "both" : "after"));
    }
    if (!c.measurements.empty()) c.echo_lines.push_back("measurements.file = " + c.measurements.string());
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    return resolve_config(parse_config(in), path.parent_path());
}

// --------------------------- Running ----------------------------------------

void run(const RunConfig& cfg, std::ostream& out) {
    Table table;
    switch (cfg.scenario) {
    case Scenario::rates_parallel: table = rates_parallel(cfg); break;
    case Scenario::rates_perp: table = rates_perp(cfg); break;
    case Scenario::trajectory: table = trajectory(cfg); break;
    case Scenario::echo: table = echo(cfg); break;
    case Scenario::generator_audit: table = generator_audit(cfg); break;
    case Scenario::extract_tauc: table = extract_tauc(cfg); break;
    }

    std::vector<std::map<std::string, double>> points;
    std::vector<std::string> labels;
    const std::vector<double> values = cfg.sweep ? cfg.sweep->values : std::vector<double>{kNaN};
    for (double v : values) {
        auto m = cfg.model;
        std::string label;
        if (cfg.sweep) {
            const std::string& p = cfg.sweep->parameter;
            label = p + " = " + fmt_plain(v);
            if (p == "Omega") {
                m["T"] = kTwoPi / v;
            } else {
                m[p] = v;
                if (p == "omega0") m["omega_ext"] = v - get_or(m, "Delta", 0.0);
                if (p == "Delta" && m.count("omega0")) m["omega_ext"] = m["omega0"] - v;
            }
        }
        points.push_back(std::move(m));
        labels.push_back(label);
    }
    const Rows rows = evaluate_points(points, table, labels, scenario_name(cfg.scenario));

    // Trajectory sweeps carry the swept value as a leading column.
    const bool lead = cfg.sweep && (cfg.scenario == Scenario::trajectory || cfg.scenario == Scenario::echo);
    out << "# kicked_dd output\n";
    for (const auto& l : cfg.echo_lines) out << "# " << l << '\n';
    if (lead) out << cfg.sweep->parameter << '\t';
    for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "\t" : "") << table.header[i];
    out << '\n';

    std::size_t per_point = values.empty() ? 0 : rows.size() / values.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (lead) out << fmt(values[per_point ? i / per_point : 0]) << '\t';
        for (std::size_t j = 0; j < rows[i].size(); ++j) out << (j ? "\t" : "") << rows[i][j];
        out << '\n';
    }
}

int run_main(const std::filesystem::path& config, const std::filesystem::path& output, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = load_config(config);
    } catch (const ConfigError& e) {
        err << config.string();
        if (e.line > 0) err << ':' << e.line;
        err << ": config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        err << config.string() << ": config error: " << e.what() << '\n';
        return kConfigError;
    }

    std::ostringstream buffer;
    try {
        run(cfg, buffer);
    } catch (const ScenarioError& e) {
        err << "kicked_dd: " << e.what() << '\n';
        return e.code;
    } catch (const std::exception& e) {
        err << "kicked_dd: scenario " << scenario_name(cfg.scenario) << ": " << e.what() << '\n';
        return classify(e);
    }

    if (output.empty() || output == "-") {
        std::cout << buffer.str();
        return kOk;
    }
    std::ofstream out(output);
    if (!out) {
        err << "kicked_dd: cannot write " << output.string() << '\n';
        return kConfigError;
    }
    out << buffer.str();
    return out ? kOk : kNumericError;
}

} // namespace kicked::cli
