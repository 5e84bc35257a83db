// lindblad.hpp — Interaction-picture GKSL generator of a kicked open system
//
//   𝓛ρ = Σ_α Σ_q Σ_ω γ_α(ω + qΩ) ( S ρ S† − ½{S†S, ρ} ),   S = S_α(ω, q)
//
// Couplings with different α are statistically independent (no cross terms).
// Lamb shifts are assumed to be absorbed in H(t) and are not generated.

#pragma once

#include "kicked/bath.hpp"
#include "kicked/floquet.hpp"
#include "kicked/operators.hpp"

#include <map>
#include <string>
#include <vector>

namespace kicked {

struct GeneratorContribution {
    std::size_t alpha;
    double omega; // Bohr-Floquet frequency ω
    int q;
    double rate;  // γ_α(ω + qΩ)
};

struct Truncation {
    int q_max_used{0};
    double tail_bound{0.0}; // Σ_α sup_{|ω|≥q_max Ω} γ_α · Σ_{|q|>q_max} ‖S_α(ω,q)‖²_F
    double rate_scale{0.0}; // Σ of γ ‖S‖²_F over included terms
};

struct LindbladGenerator {
    Index dim{0};
    Superoperator superop;               // computational basis, column stacking
    ComplexMatrix floquet_basis;         // eigenbasis of H̄ used for block checks
    std::vector<GeneratorContribution> contributions;
    Truncation truncation;
};

struct RateResult {
    double eta{0.0};
    std::map<std::string, double> meta;
};

// Adaptive truncation: q_max doubles (starting from h.q_max()) until the tail
// bound drops below rel_tol · rate_scale. Throws TruncationError if a spectral
// density cannot bound its tail or q_max would exceed max_q.
LindbladGenerator build_generator(const HarmonicDecomposition& h, const std::vector<SpectralDensity>& sds,
                                  double rel_tol, int max_q = 1 << 17);

// Fixed-order assembly of the terms |q| ≤ h.q_max(); no tail control.
LindbladGenerator assemble_generator(const HarmonicDecomposition& h, const std::vector<SpectralDensity>& sds);

// η_∥ = (1/T2)(1 − (2τ_c/T) tanh(T/(2τ_c)))
RateResult rate_parallel_closed(double T, double T2, double tau_c);

// η_⊥ = (AΩ³/4π²) coth(Ω/2ω_cut) / sinh(Ω/2ω_cut), evaluated as
// (AΩ³/2π²) z(1+z²)/(1−z²)² with z = e^{−Ω/(2ω_cut)}. Zero temperature, Δ = 0.
RateResult rate_perp_closed(double Omega, double A, double omega_cut);

// 1 − tanh(u)/u, with a series branch for small u.
double suppression_factor(double u);

RateResult combine_rates(const std::vector<RateResult>& etas);

// e^{t𝓛}; DomainError for t < 0.
Superoperator semigroup(const LindbladGenerator& g, double t);

struct CptpReport {
    double trace_defect{0.0};
    double choi_min_eig{0.0};
    bool passes(double tol = 1e-10) const { return trace_defect <= tol && choi_min_eig >= -tol; }
};

CptpReport verify_cptp(const Superoperator& map);

// Choi matrix Σ_ij |i⟩⟨j| ⊗ Φ(|i⟩⟨j|).
ComplexMatrix choi_matrix(const Superoperator& map);

// Generator (or map) expressed in the Floquet basis: ρ_F = V† ρ V.
Superoperator to_floquet_basis(const Superoperator& s, const ComplexMatrix& basis);

// Largest entry of the Floquet-basis superoperator that couples populations
// to coherences (either direction).
double block_coupling_defect(const LindbladGenerator& g);

// For two-level generators: −⟨E_01|𝓛|E_01⟩ (coherence decay) and the decay
// rate of the Floquet population difference.
struct TlsDecayRates {
    double coherence{0.0};
    double population_difference{0.0};
};

TlsDecayRates tls_decay_rates(const LindbladGenerator& g);

// Trace-preservation check of a generator: max |Tr 𝓛(E_ij)|.
double generator_trace_defect(const Superoperator& gen);
// max ‖𝓛(E_ij)† − 𝓛(E_ji)‖
double generator_hermiticity_defect(const Superoperator& gen);

} // namespace kicked
