// floquet.hpp — Floquet analysis of periodically kicked Hamiltonians
//
//   H(t) = H0 + λ W Σ_k δ(t − kT)
//
// Time convention: the kick at t = 0 is not counted and the state at t = nT is
// taken just after the n-th kick, so U(t) is right-continuous and U(nT) = U(T)^n.

#pragma once

#include "kicked/operators.hpp"

#include <cstdint>
#include <vector>

namespace kicked {

class KickedModel {
public:
    // H0 in angular-frequency units (ħ = 1), W dimensionless, lambda in radians.
    KickedModel(HermitianOperator h0, HermitianOperator w, double lambda, double period);

    const HermitianOperator& h0() const noexcept { return h0_; }
    const HermitianOperator& kick() const noexcept { return w_; }
    double lambda() const noexcept { return lambda_; }
    double period() const noexcept { return period_; }
    double drive_frequency() const noexcept; // Ω = 2π/T
    Index dim() const noexcept { return h0_.dim(); }

private:
    HermitianOperator h0_;
    HermitianOperator w_;
    double lambda_;
    double period_;
};

// t = T (n + s) with n = ⌊t/T⌋ and s = {t/T} ∈ [0, 1). Values of t/T within
// 1e-12 (relative) of an integer snap onto it, so sampled kick times land on
// the right-continuous branch.
struct KickClock {
    std::int64_t n{0};
    double s{0.0};
};

KickClock split_time(double t, double period);

// Centered sawtooth {x}_c = {x} − 1/2.
inline double centered_sawtooth(const KickClock& c) { return c.s - 0.5; }

struct FloquetDecomposition {
    ComplexMatrix floquet_operator;    // U(T)
    HermitianOperator hbar;            // averaged Hamiltonian, U(T) = e^{−i H̄ T}
    std::vector<double> quasienergies; // ascending, in (−Ω/2, Ω/2]
    ComplexMatrix basis;               // column k is φ_k
    double period{0.0};
};

// e^{−iλW} e^{−i H0 T}
ComplexMatrix floquet_operator(const KickedModel& m);

// Diagonalizes U(T) by a complex Schur factorization (diagonal for normal
// matrices, so degenerate eigenspaces come out orthonormal). Quasienergies
// are sorted ascending; each φ_k is phased so its last component with
// modulus above 1e-8 is real and positive.
FloquetDecomposition decompose(const KickedModel& m);

// U(t) = e^{−i H0 T{t/T}} e^{i H̄ T{t/T}} e^{−i H̄ t}. Throws DomainError for t < 0.
ComplexMatrix propagator(const KickedModel& m, double t);

// Reusable propagator evaluation for many sample times.
class KickedPropagator {
public:
    explicit KickedPropagator(const KickedModel& m);
    KickedPropagator(const KickedModel& m, FloquetDecomposition f);

    ComplexMatrix operator()(double t) const;
    // Left limit U(t⁻); differs from U(t) only at kick times t = nT, n ≥ 1.
    ComplexMatrix left_limit(double t) const;

    const FloquetDecomposition& floquet() const noexcept { return floquet_; }
    const KickedModel& model() const noexcept { return model_; }

private:
    ComplexMatrix evaluate(const KickClock& c) const;

    KickedModel model_;
    FloquetDecomposition floquet_;
    Eigen::VectorXd h0_energies_;
    ComplexMatrix h0_basis_;
};

// Fourier components S_α(ω, q) of the interaction-picture couplings
//
//   U(t)† S_α U(t) = Σ_q Σ_ω S_α(ω, q) e^{i(ω + qΩ)t},
//
// stored in the Floquet basis for |q| ≤ q_max and every clustered Bohr-Floquet
// frequency ω = ε_k − ε_l.
class HarmonicDecomposition {
public:
    HarmonicDecomposition(const KickedModel& model, std::vector<HermitianOperator> couplings,
                          FloquetDecomposition floquet, int q_max);

    const KickedModel& model() const noexcept { return model_; }
    const std::vector<HermitianOperator>& couplings() const noexcept { return couplings_; }
    const FloquetDecomposition& floquet() const noexcept { return floquet_; }
    std::size_t num_couplings() const noexcept { return couplings_.size(); }
    int q_max() const noexcept { return q_max_; }
    double drive_frequency() const noexcept { return model_.drive_frequency(); }
    Index dim() const noexcept { return model_.dim(); }

    // Clustered Bohr-Floquet frequencies, ascending.
    const std::vector<double>& frequencies() const noexcept { return frequencies_; }
    // Index into frequencies() of ε_k − ε_l.
    std::size_t frequency_index(Index k, Index l) const;

    // S_α(ω_w, q) in the Floquet basis; zero outside |q| ≤ q_max.
    const ComplexMatrix& component(std::size_t alpha, std::size_t w, int q) const;
    // Same operator in the computational basis, V S V†.
    ComplexMatrix component_computational(std::size_t alpha, std::size_t w, int q) const;

    // ‖S_α‖²_F, equal to Σ_{ω,q∈ℤ} ‖S_α(ω, q)‖²_F by Parseval.
    double total_norm2(std::size_t alpha) const;
    // Σ over |q| > q_max of ‖S_α(ω, q)‖²_F, from the Parseval identity.
    double tail_norm2(std::size_t alpha) const;

private:
    friend HarmonicDecomposition harmonic_decomposition(const KickedModel&,
                                                        const std::vector<HermitianOperator>&, int);
    std::size_t slot(std::size_t alpha, std::size_t w, int q) const;

    KickedModel model_;
    std::vector<HermitianOperator> couplings_;
    FloquetDecomposition floquet_;
    int q_max_;
    std::vector<double> frequencies_;
    std::vector<std::size_t> pair_to_frequency_; // k * d + l
    std::vector<ComplexMatrix> components_;      // [alpha][q + q_max][w]
    std::vector<double> total_norm2_;
    std::vector<double> kept_norm2_;
    ComplexMatrix zero_;
};

// Closed-form harmonic coefficients. P(t) is expanded in the eigenbases of H0
// and H̄, so every term of ⟨φ_k|P(t)† S P(t)|φ_l⟩ is a pure exponential in
// {t/T} whose period integral is analytic. Frequencies are clustered with
// tolerance 1e-9·Ω. Throws ValidationError for q_max < 1.
HarmonicDecomposition harmonic_decomposition(const KickedModel& m,
                                             const std::vector<HermitianOperator>& couplings,
                                             int q_max);

// Σ_{ω, |q| ≤ q_max} S_α(ω, q) e^{i(ω + qΩ)t} in the computational basis.
// Converges to U(t)† S_α U(t) away from kick times; at t = nT it returns the
// midpoint of the jump.
ComplexMatrix reconstruct_heisenberg(const HarmonicDecomposition& h, std::size_t alpha, double t);

} // namespace kicked
