// echo.hpp — Detuning ensembles, spin-echo signals and τ_c extraction
//
// The ensemble is the distribution of the detuning Δ itself. Averaged phase
// factors use the characteristic function χ(x) = ⟨e^{iΔx}⟩:
//   ⟨cos φ(t)⟩ + i⟨sin φ(t)⟩ = e^{iω_ext t} χ(T{t/T}_c).

#pragma once

#include "kicked/dynamics.hpp"
#include "kicked/operators.hpp"

#include <complex>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace kicked {

class DetuningEnsemble {
public:
    enum class Kind { gaussian, uniform, discrete };

    static DetuningEnsemble gaussian(double sigma, double center = 0.0, std::uint64_t seed = 0);
    static DetuningEnsemble uniform(double halfwidth, double center = 0.0, std::uint64_t seed = 0);
    // Weights must be nonnegative and sum to 1 within 1e-12; empty weights mean equal.
    static DetuningEnsemble discrete(std::vector<double> samples, std::vector<double> weights = {},
                                     std::uint64_t seed = 0);

    Kind kind() const noexcept { return kind_; }
    double width() const noexcept { return width_; } // σ or half-width
    double center() const noexcept { return center_; }
    std::uint64_t seed() const noexcept { return seed_; }
    const std::vector<double>& samples() const noexcept { return samples_; }
    const std::vector<double>& weights() const noexcept { return weights_; }

    // ⟨Δ⟩
    double mean() const;
    // χ(x) = ⟨e^{iΔx}⟩, analytic for gaussian and uniform.
    std::complex<double> characteristic(double x) const;
    // n equally weighted draws from this distribution, seeded by seed().
    DetuningEnsemble sampled(std::size_t n) const;

private:
    DetuningEnsemble(Kind k, double width, double center, std::vector<double> s, std::vector<double> w,
                     std::uint64_t seed)
        : kind_(k), width_(width), center_(center), samples_(std::move(s)), weights_(std::move(w)), seed_(seed) {}

    Kind kind_;
    double width_;
    double center_;
    std::vector<double> samples_;
    std::vector<double> weights_;
    std::uint64_t seed_;
};

struct PhaseAverage {
    double avg_cos{1.0};
    double avg_sin{0.0};
};

// ⟨cos φ(t)⟩, ⟨sin φ(t)⟩ with φ(t) = ω_ext t + ΔT{t/T}_c. Only p.omega_ext
// and p.T are used; Δ comes from the ensemble.
PhaseAverage averaged_phase(const DetuningEnsemble& e, const TLSParams& p, double t);

struct EchoSignal {
    std::vector<double> times;
    std::vector<double> avg_cos;
    std::vector<double> avg_sin;
    std::vector<double> x1; // ensemble-averaged transverse Bloch components
    std::vector<double> x2;
};

// Ensemble average of the longitudinal-coupling closed-form transverse
// components. The decay factors e^{−ηt}, e^{−2ηt} do not depend on Δ and are
// taken outside the average; x0 is referenced to the mean detuning, i.e.
// φ(0) = −⟨Δ⟩T/2 for every spin.
EchoSignal echo_signal(const DetuningEnsemble& e, const TLSParams& p, const BlochVector& x0,
                       const std::vector<double>& times);

struct TauCEstimate {
    double T2{0.0};
    double tau_c{0.0};
    double residual{0.0};    // |1 − (2τ_c/T)tanh(T/2τ_c) − η_fast T2|
    bool degenerate{false};  // no measurable suppression; τ_c reported as 0
};

// T2 = 1/η_slow; τ_c solves η_fast T2 = 1 − (2τ_c/T_fast) tanh(T_fast/(2τ_c))
// on (0, 10³ T_fast]. InconsistentDataError if η_fast ≥ η_slow, OutOfRangeError
// if the root lies above the bracket.
TauCEstimate extract_tau_c(double eta_slow, double eta_fast, double T_fast);

struct RateMeasurement {
    double T;
    double eta;
};

// Whitespace-separated "T eta" pairs, '#' comments.
std::vector<RateMeasurement> load_measurements(std::istream& in);
std::vector<RateMeasurement> load_measurements(const std::filesystem::path& path);

// Uses the longest period as the slow point and the shortest as the fast one.
TauCEstimate extract_tau_c(const std::vector<RateMeasurement>& data);

} // namespace kicked
