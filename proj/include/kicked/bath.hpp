// bath.hpp — Spectral densities γ(ω) of the environment
//
// Units: ω in rad/time, γ in 1/time.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <limits>
#include <variant>
#include <vector>

namespace kicked {

// Exponentially decaying correlations, even in ω:
//   γ(ω) = (1/T2) / (1 + τ_c² ω²)
// Normalized so the kicked dephasing rate tends to 1/T2 for T ≫ τ_c.
struct Lorentzian {
    double T2;
    double tau_c;
};

// Acoustic-phonon density with exponential cutoff and detailed balance:
//   γ(ω) = A ω³ e^{−|ω|/ω_cut} / (1 − e^{−βω}),   γ(0) = 0.
// beta = +inf is zero temperature (γ = 0 for ω ≤ 0).
struct PhononCutoff {
    double A;
    double omega_cut;
    double beta;
};

// Linear interpolation on a sorted grid; no extrapolation.
struct Tabulated {
    std::vector<double> grid;
    std::vector<double> values;
};

class SpectralDensity {
public:
    using Model = std::variant<Lorentzian, PhononCutoff, Tabulated>;

    static SpectralDensity lorentzian(double T2, double tau_c);
    static SpectralDensity phonon(double A, double omega_cut,
                                  double beta = std::numeric_limits<double>::infinity());
    static SpectralDensity tabulated(std::vector<double> grid, std::vector<double> values);

    const Model& model() const noexcept { return model_; }
    double operator()(double omega) const;

    // Upper bound on γ over |ω| ≥ w_min (exact for Lorentzian and Tabulated).
    // Throws ExtrapolationError when the tabulated grid cannot cover the tail.
    double sup_beyond(double w_min) const;

private:
    explicit SpectralDensity(Model m) : model_(std::move(m)) {}
    Model model_;
};

double evaluate(const SpectralDensity& sd, double omega);

// γ(−ω)/γ(ω); 1 at ω = 0. Throws UndefinedRatioError when γ(ω) = 0.
double kms_ratio(const SpectralDensity& sd, double omega);

// Two-column text (ω, γ) with '#' comments and blank lines ignored.
SpectralDensity load_tabulated(std::istream& in);
SpectralDensity load_tabulated(const std::filesystem::path& path);

} // namespace kicked
