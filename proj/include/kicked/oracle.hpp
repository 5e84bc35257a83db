// oracle.hpp — Slow, independent reference computations for validation
//
// Nothing here goes through the closed-form Floquet or rate code: pulses are
// integrated step by step, Fourier coefficients by quadrature, the master
// equation by RK4, and rate series by direct summation.

#pragma once

#include "kicked/floquet.hpp"
#include "kicked/lindblad.hpp"
#include "kicked/operators.hpp"

#include <functional>
#include <vector>

namespace kicked {

// Each δ-kick becomes a rectangular pulse of height λ/ε on [nT − ε, nT].
struct RegularizationSpec {
    double pulse_width{1e-5};
    int steps_per_pulse{10};
    int steps_per_free_segment{100};

    // ε > 0, ε ≤ T/100 and the step-count minimums; ValidationError otherwise.
    void validate(double period) const;
};

ComplexMatrix regularized_propagator(const KickedModel& m, double t, const RegularizationSpec& r);

// Fourier coefficients c_q^{kl} = (1/T)∫₀ᵀ e^{−iqΩt} ⟨φ_k|P(t)† S P(t)|φ_l⟩ dt
// on the open midpoint grid t_j = (j + ½)T/n, P(t) = e^{−iH0 T s} e^{iH̄ T s}.
// The Floquet basis is an input so coefficients are comparable elementwise.
struct QuadratureHarmonics {
    int q_max{0};
    std::vector<ComplexMatrix> coefficients; // index q + q_max, Floquet basis

    const ComplexMatrix& at(int q) const { return coefficients.at(static_cast<std::size_t>(q + q_max)); }
};

// Requires n_samples ≥ 8 q_max (ValidationError).
QuadratureHarmonics quadrature_harmonics(const KickedModel& m, const FloquetDecomposition& f,
                                         const HermitianOperator& s, int q_max, int n_samples);

// Classical RK4 for dρ/dt = 𝓛ρ. StabilityError unless dt ≤ 0.01/‖𝓛‖.
DensityMatrix integrate_master_equation(const LindbladGenerator& g, const DensityMatrix& rho0, double t,
                                        double dt);

struct SeriesRate {
    double rate{0.0};
    double tail{0.0}; // upper bound on the omitted terms
    int q_max{0};
};

// (4/π²) Σ γ((q + ½)Ω)/(2q + 1)² over |q + ½| ≤ q_max + ½, for any γ that is
// even or vanishes at negative frequency. tail is left at 0 (γ unknown).
SeriesRate series_rate(const std::function<double(double)>& gamma, double Omega, int q_max);

// Longitudinal Lorentzian series with a rigorous tail bound.
SeriesRate series_rate_parallel(double T, double T2, double tau_c, int q_max);
// Doubles q_max from 16 until tail ≤ rel_tol · rate.
SeriesRate series_rate_parallel_adaptive(double T, double T2, double tau_c, double rel_tol);

// Transverse zero-temperature phonon series, summed until the geometric tail
// bound is below rel_tol · rate.
SeriesRate series_rate_perp(double Omega, double A, double omega_cut, double rel_tol = 1e-16);

} // namespace kicked
