// echo.cpp — Ensemble averaging and τ_c extraction

#include "kicked/echo.hpp"
#include "kicked/errors.hpp"
#include "kicked/lindblad.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace kicked {

DetuningEnsemble DetuningEnsemble::gaussian(double sigma, double center, std::uint64_t seed) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma) || !std::isfinite(center))
        throw ValidationError("gaussian ensemble: sigma must be finite and >= 0");
    return DetuningEnsemble(Kind::gaussian, sigma, center, {}, {}, seed);
}

DetuningEnsemble DetuningEnsemble::uniform(double halfwidth, double center, std::uint64_t seed) {
    if (!(halfwidth >= 0.0) || !std::isfinite(halfwidth) || !std::isfinite(center))
        throw ValidationError("uniform ensemble: halfwidth must be finite and >= 0");
    return DetuningEnsemble(Kind::uniform, halfwidth, center, {}, {}, seed);
}

DetuningEnsemble DetuningEnsemble::discrete(std::vector<double> samples, std::vector<double> weights,
                                            std::uint64_t seed) {
    if (samples.empty()) throw ValidationError("discrete ensemble: no samples");
    const bool equal = weights.empty();
    if (equal) weights.assign(samples.size(), 1.0 / static_cast<double>(samples.size()));
    if (weights.size() != samples.size()) throw ValidationError("discrete ensemble: one weight per sample");
    double total = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!std::isfinite(samples[i])) throw ValidationError("discrete ensemble: non-finite detuning");
        if (!(weights[i] >= 0.0)) throw ValidationError("discrete ensemble: negative weight");
        total += weights[i];
    }
    // Generated equal weights are exact up to summation rounding.
    if (!equal && std::abs(total - 1.0) > 1e-12) throw ValidationError("discrete ensemble: weights must sum to 1");
    return DetuningEnsemble(Kind::discrete, 0.0, 0.0, std::move(samples), std::move(weights), seed);
}

namespace {

// Neumaier summation: large sampled ensembles otherwise lose ~N·eps.
struct CompensatedSum {
    double sum{0.0}, carry{0.0};
    void add(double x) {
        const double t = sum + x;
        carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + carry; }
};

} // namespace

double DetuningEnsemble::mean() const {
    if (kind_ != Kind::discrete) return center_;
    CompensatedSum s;
    for (std::size_t i = 0; i < samples_.size(); ++i) s.add(weights_[i] * samples_[i]);
    return s.value();
}

std::complex<double> DetuningEnsemble::characteristic(double x) const {
    switch (kind_) {
    case Kind::gaussian:
        return std::polar(std::exp(-0.5 * width_ * width_ * x * x), center_ * x);
    case Kind::uniform: {
        const double hx = width_ * x;
        const double sinc = hx == 0.0 ? 1.0 : std::sin(hx) / hx;
        return std::polar(1.0, center_ * x) * sinc;
    }
    case Kind::discrete: {
        CompensatedSum re, im;
        for (std::size_t i = 0; i < samples_.size(); ++i) {
            re.add(weights_[i] * std::cos(samples_[i] * x));
            im.add(weights_[i] * std::sin(samples_[i] * x));
        }
        return {re.value(), im.value()};
    }
    }
    return {1.0, 0.0};
}

DetuningEnsemble DetuningEnsemble::sampled(std::size_t n) const {
    if (n == 0) throw ValidationError("sampled: need at least one draw");
    std::mt19937_64 rng(seed_);
    std::vector<double> draws(n);
    switch (kind_) {
    case Kind::gaussian: {
        std::normal_distribution<double> dist(center_, width_ > 0.0 ? width_ : 1.0);
        for (auto& d : draws) d = width_ > 0.0 ? dist(rng) : center_;
        break;
    }
    case Kind::uniform: {
        std::uniform_real_distribution<double> dist(center_ - width_, center_ + width_);
        for (auto& d : draws) d = width_ > 0.0 ? dist(rng) : center_;
        break;
    }
    case Kind::discrete: {
        std::discrete_distribution<std::size_t> pick(weights_.begin(), weights_.end());
        for (auto& d : draws) d = samples_[pick(rng)];
        break;
    }
    }
    return discrete(std::move(draws), {}, seed_);
}

// --------------------------- Echo signal ------------------------------------

PhaseAverage averaged_phase(const DetuningEnsemble& e, const TLSParams& p, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("averaged_phase: t must be finite and >= 0");
    const KickClock c = split_time(t, p.T);
    const std::complex<double> z = std::polar(1.0, p.omega_ext * t) * e.characteristic(p.T * centered_sawtooth(c));
    return {z.real(), z.imag()};
}

EchoSignal echo_signal(const DetuningEnsemble& e, const TLSParams& p, const BlochVector& x0,
                       const std::vector<double>& times) {
    const double phi0 = -0.5 * e.mean() * p.T;
    const double c1 = x0.x1 * std::cos(phi0) + x0.x2 * std::sin(phi0);
    const double c2 = x0.x1 * std::sin(phi0) - x0.x2 * std::cos(phi0);
    EchoSignal out;
    out.times = times;
    for (double t : times) {
        const PhaseAverage a = averaged_phase(e, p, t);
        const KickClock c = split_time(t, p.T);
        const double fast = std::exp(-2.0 * p.eta * t);
        const double slow = (c.n % 2 == 0 ? 1.0 : -1.0) * std::exp(-p.eta * t);
        out.avg_cos.push_back(a.avg_cos);
        out.avg_sin.push_back(a.avg_sin);
        out.x1.push_back(fast * c1 * a.avg_cos + slow * c2 * a.avg_sin);
        out.x2.push_back(fast * c1 * a.avg_sin - slow * c2 * a.avg_cos);
    }
    return out;
}

// --------------------------- τ_c extraction ---------------------------------

TauCEstimate extract_tau_c(double eta_slow, double eta_fast, double T_fast) {
    if (!(eta_slow > 0.0) || !(eta_fast > 0.0) || !(T_fast > 0.0) || !std::isfinite(eta_slow) ||
        !std::isfinite(T_fast))
        throw ValidationError("extract_tau_c: rates and period must be positive and finite");
    if (eta_fast >= eta_slow)
        throw InconsistentDataError("extract_tau_c: eta_fast >= eta_slow, no suppression by fast kicks");

    TauCEstimate est;
    est.T2 = 1.0 / eta_slow;
    const double r = eta_fast / eta_slow;
    if (1.0 - r < 1e-12) {
        est.degenerate = true;
        est.residual = 1.0 - r;
        return est;
    }
    // Work in y = ln τ; g(τ) falls monotonically from 1 to 0 as τ grows.
    auto f = [&](double y) { return suppression_factor(T_fast / (2.0 * std::exp(y))) - r; };
    const double lo = std::log(T_fast * 1e-15), hi = std::log(T_fast * 1e3);
    const double f_lo = f(lo), f_hi = f(hi);
    if (f_hi > 0.0)
        throw OutOfRangeError("extract_tau_c: suppression too weak, tau_c exceeds 1e3 * T_fast");
    if (f_lo < 0.0) throw OutOfRangeError("extract_tau_c: no root bracket");
    if (f_hi == 0.0) {
        est.tau_c = std::exp(hi);
        return est;
    }
    std::uintmax_t iters = 200;
    const auto root = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi,
                                                        boost::math::tools::eps_tolerance<double>(52), iters);
    const double y = 0.5 * (root.first + root.second);
    est.tau_c = std::exp(y);
    est.residual = std::abs(f(y));
    return est;
}

std::vector<RateMeasurement> load_measurements(std::istream& in) {
    std::vector<RateMeasurement> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double T, eta;
        if (!(ls >> T)) continue;
        if (!(ls >> eta))
            throw ValidationError("measurements: line " + std::to_string(lineno) + ": expected 'T eta'");
        if (!(T > 0.0) || !(eta > 0.0))
            throw ValidationError("measurements: line " + std::to_string(lineno) + ": values must be positive");
        out.push_back({T, eta});
    }
    return out;
}

std::vector<RateMeasurement> load_measurements(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path.string());
    return load_measurements(in);
}

TauCEstimate extract_tau_c(const std::vector<RateMeasurement>& data) {
    if (data.size() < 2) throw ValidationError("extract_tau_c: need at least two measurements");
    auto by_T = [](const RateMeasurement& a, const RateMeasurement& b) { return a.T < b.T; };
    const auto fast = *std::min_element(data.begin(), data.end(), by_T);
    const auto slow = *std::max_element(data.begin(), data.end(), by_T);
    if (fast.T == slow.T) throw ValidationError("extract_tau_c: measurements need two distinct periods");
    return extract_tau_c(slow.eta, fast.eta, fast.T);
}

} // namespace kicked
