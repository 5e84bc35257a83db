// dynamics.hpp — State evolution ρ(t) = 𝓤₀(t) 𝓤(t) e^{t𝓛} ρ(0) and closed-form
// two-level trajectories under magic-angle kicks
//
// Frames: interaction (e^{t𝓛}ρ0), rotating (adds the kicked propagator U(t))
// and lab (adds the carrier rotation e^{−iω_ext t σ³/2}, two-level only).

#pragma once

#include "kicked/bath.hpp"
#include "kicked/floquet.hpp"
#include "kicked/lindblad.hpp"
#include "kicked/operators.hpp"

#include <vector>

namespace kicked {

struct TLSParams {
    double omega0{0.0};    // Larmor frequency
    double omega_ext{0.0}; // carrier
    double Delta{0.0};     // omega0 − omega_ext
    double T{1.0};         // pulse period
    double eta{0.0};       // decay coefficient in use

    // Validates T > 0, eta ≥ 0 and finite frequencies; Delta is derived.
    static TLSParams make(double omega0, double omega_ext, double T, double eta);
};

// H0 = (Δ/2)σ³, W = σ¹, λ = π/2: the rotating-frame kicked spin.
KickedModel magic_angle_model(const TLSParams& p);

enum class Frame { interaction, rotating, lab };

// Which one-sided limit to report at kick times t = nT (n ≥ 1).
enum class KickSide { after, before };

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    Frame frame{Frame::interaction};
};

struct EvolveOptions {
    double omega_ext{0.0}; // only used in the lab frame
    KickSide side{KickSide::after};
};

// Times must be non-negative and strictly increasing (ValidationError).
// Frame::lab with d ≠ 2 throws UnsupportedError.
Trajectory evolve(const KickedModel& m, const LindbladGenerator& g, const DensityMatrix& rho0,
                  const std::vector<double>& times, Frame frame, const EvolveOptions& opt = {});

// Single-time version of evolve.
DensityMatrix evolve_state(const KickedPropagator& u, const LindbladGenerator& g, const DensityMatrix& rho0,
                           double t, Frame frame, const EvolveOptions& opt = {});

// Lab-frame closed form for longitudinal coupling:
//   x1 = e^{−2ηt} cos φ(t) (x1 cos φ0 + x2 sin φ0) + (−1)^n e^{−ηt} sin φ(t) (x1 sin φ0 − x2 cos φ0)
//   x2 = e^{−2ηt} sin φ(t) (x1 cos φ0 + x2 sin φ0) − (−1)^n e^{−ηt} cos φ(t) (x1 sin φ0 − x2 cos φ0)
//   x3 = (−1)^n e^{−ηt} x3(0)
// with n = ⌊t/T⌋ and φ(t) = ω_ext t + ΔT({t/T} − ½).
DensityMatrix closed_form_parallel(const TLSParams& p, const DensityMatrix& rho0, double t,
                                   KickSide side = KickSide::after);
BlochVector closed_form_parallel_bloch(const TLSParams& p, const BlochVector& x0, double t,
                                       KickSide side = KickSide::after);

// Transverse coupling at resonance and zero temperature (UnsupportedError if Δ ≠ 0):
//   x1 = e^{−2ηt} x1(0) cos ω0t − (−1)^n e^{−ηt} x2(0) sin ω0t
//   x2 = e^{−2ηt} x1(0) sin ω0t + (−1)^n e^{−ηt} x2(0) cos ω0t
//   x3 = (−1)^n e^{−ηt} x3(0)
DensityMatrix closed_form_perp(const TLSParams& p, const DensityMatrix& rho0, double t,
                               KickSide side = KickSide::after);

// [(1 + e^{−βω0}) γ(ω0)]^{-1}; +inf when γ(ω0) = 0. beta = +inf allowed.
double t1_time(const SpectralDensity& sd, double omega0, double beta);

// 1/T2′ = 1/T2 + 1/(2T1); either input may be +inf.
double t2_prime(double T1, double T2);

} // namespace kicked
