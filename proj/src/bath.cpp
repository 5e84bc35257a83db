// bath.cpp — Spectral density models

#include "kicked/bath.hpp"
#include "kicked/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace kicked {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double lorentz(const Lorentzian& l, double w) {
    return (1.0 / l.T2) / (1.0 + l.tau_c * l.tau_c * w * w);
}

double phonon_value(const PhononCutoff& p, double w) {
    if (w == 0.0) return 0.0;
    const double a = std::abs(w);
    const double base = p.A * a * a * a * std::exp(-a / p.omega_cut);
    if (std::isinf(p.beta)) return w > 0.0 ? base : 0.0;
    // w > 0: base / (1 − e^{−βw});  w < 0: base e^{−β|w|} / (1 − e^{−β|w|})
    return w > 0.0 ? base / -std::expm1(-p.beta * a) : base / std::expm1(p.beta * a);
}

double table_value(const Tabulated& t, double w) {
    if (w < t.grid.front() || w > t.grid.back())
        throw ExtrapolationError("Tabulated spectral density queried outside its grid at omega = " +
                                 std::to_string(w));
    auto it = std::upper_bound(t.grid.begin(), t.grid.end(), w);
    if (it == t.grid.end()) return t.values.back();
    const std::size_t j = static_cast<std::size_t>(it - t.grid.begin());
    if (j == 0) return t.values.front();
    const double x0 = t.grid[j - 1], x1 = t.grid[j];
    const double f = (w - x0) / (x1 - x0);
    return (1.0 - f) * t.values[j - 1] + f * t.values[j];
}

} // namespace

SpectralDensity SpectralDensity::lorentzian(double T2, double tau_c) {
    if (!(T2 > 0.0) || !(tau_c > 0.0) || !std::isfinite(T2) || !std::isfinite(tau_c))
        throw ValidationError("Lorentzian: T2 and tau_c must be positive and finite");
    return SpectralDensity(Lorentzian{T2, tau_c});
}

SpectralDensity SpectralDensity::phonon(double A, double omega_cut, double beta) {
    if (!(A > 0.0) || !(omega_cut > 0.0) || !std::isfinite(A) || !std::isfinite(omega_cut))
        throw ValidationError("PhononCutoff: A and omega_cut must be positive and finite");
    // β = 0 makes ω³/(1 − e^{−βω}) diverge.
    if (!(beta > 0.0)) throw ValidationError("PhononCutoff: beta must be positive (inf for zero temperature)");
    return SpectralDensity(PhononCutoff{A, omega_cut, beta});
}

SpectralDensity SpectralDensity::tabulated(std::vector<double> grid, std::vector<double> values) {
    if (grid.size() < 2 || grid.size() != values.size())
        throw ValidationError("Tabulated: need at least two (omega, gamma) pairs");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]) || !std::isfinite(values[i]))
            throw ValidationError("Tabulated: non-finite entry");
        if (values[i] < 0.0) throw ValidationError("Tabulated: negative rate");
        if (i > 0 && !(grid[i] > grid[i - 1])) throw ValidationError("Tabulated: grid must be strictly increasing");
    }
    return SpectralDensity(Tabulated{std::move(grid), std::move(values)});
}

double SpectralDensity::operator()(double omega) const {
    if (!std::isfinite(omega)) throw DomainError("spectral density: non-finite frequency");
    return std::visit(overloaded{
                          [&](const Lorentzian& l) { return lorentz(l, omega); },
                          [&](const PhononCutoff& p) { return phonon_value(p, omega); },
                          [&](const Tabulated& t) { return table_value(t, omega); },
                      },
                      model_);
}

double SpectralDensity::sup_beyond(double w_min) const {
    w_min = std::max(0.0, w_min);
    return std::visit(
        overloaded{
            [&](const Lorentzian& l) { return lorentz(l, w_min); },
            [&](const PhononCutoff& p) {
                // γ(−ω) ≤ γ(ω) for ω > 0, so only the positive side matters.
                // ω³/(1 − e^{−βω}) increases and e^{−ω/ω_cut} decreases; past 3ω_cut
                // the product ω³ e^{−ω/ω_cut} decreases too.
                const double peak = 3.0 * p.omega_cut;
                if (w_min >= peak) return phonon_value(p, w_min);
                const double rising = std::isinf(p.beta) ? p.A * peak * peak * peak
                                                         : p.A * peak * peak * peak / -std::expm1(-p.beta * peak);
                return rising * std::exp(-w_min / p.omega_cut);
            },
            // Nothing is known past the grid ends, and |ω| ≥ w_min always reaches them.
            [&](const Tabulated&) -> double {
                throw ExtrapolationError("Tabulated spectral density has no bound for |omega| >= " +
                                         std::to_string(w_min));
            },
        },
        model_);
}

double evaluate(const SpectralDensity& sd, double omega) {
    return sd(omega);
}

double kms_ratio(const SpectralDensity& sd, double omega) {
    if (omega == 0.0) return 1.0;
    const double denom = sd(omega);
    if (!(denom > 0.0)) throw UndefinedRatioError("kms_ratio: gamma(omega) is zero");
    return sd(-omega) / denom;
}

SpectralDensity load_tabulated(std::istream& in) {
    std::vector<double> grid, values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double w, g;
        if (!(ls >> w)) continue;
        if (!(ls >> g)) throw ValidationError("tabulated spectral density: line " + std::to_string(lineno) +
                                              ": expected two columns");
        grid.push_back(w);
        values.push_back(g);
    }
    return SpectralDensity::tabulated(std::move(grid), std::move(values));
}

SpectralDensity load_tabulated(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path.string());
    return load_tabulated(in);
}

} // namespace kicked
