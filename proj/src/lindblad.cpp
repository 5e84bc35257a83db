// lindblad.cpp — Generator assembly, closed-form TLS rates, CPTP checks

#include "kicked/lindblad.hpp"
#include "kicked/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace kicked {

namespace {

// Dissipator γ(SρS† − ½{S†S, ρ}) in column-stacking form.
ComplexMatrix dissipator(const ComplexMatrix& s) {
    const Index d = s.rows();
    const ComplexMatrix sds = s.adjoint() * s;
    const ComplexMatrix id = identity(d);
    return kron(s.conjugate(), s) - 0.5 * kron(id, sds) - 0.5 * kron(sds.transpose(), id);
}

void require_positive(double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw ValidationError(std::string(name) + " must be positive and finite");
}

} // namespace

// --------------------------- Assembly ---------------------------------------

LindbladGenerator assemble_generator(const HarmonicDecomposition& h, const std::vector<SpectralDensity>& sds) {
    if (sds.size() != h.num_couplings())
        throw ValidationError("assemble_generator: need one spectral density per coupling");
    const Index d = h.dim();
    const double omega = h.drive_frequency();

    LindbladGenerator g;
    g.dim = d;
    g.superop = Superoperator::zero(d);
    g.floquet_basis = h.floquet().basis;
    g.truncation.q_max_used = h.q_max();

    for (std::size_t alpha = 0; alpha < h.num_couplings(); ++alpha) {
        const double floor = 1e-28 * h.total_norm2(alpha);
        for (std::size_t w = 0; w < h.frequencies().size(); ++w) {
            const double bohr = h.frequencies()[w];
            for (int q = -h.q_max(); q <= h.q_max(); ++q) {
                const ComplexMatrix& sf = h.component(alpha, w, q);
                const double n2 = sf.squaredNorm();
                if (n2 <= floor) continue;
                double rate;
                try {
                    rate = sds[alpha](bohr + q * omega);
                } catch (const ExtrapolationError& e) {
                    throw TruncationError(std::string("generator: spectral density does not cover the harmonics: ") +
                                          e.what());
                }
                g.contributions.push_back({alpha, bohr, q, rate});
                if (rate == 0.0) continue;
                g.superop.matrix += rate * dissipator(h.floquet().basis * sf * h.floquet().basis.adjoint());
                g.truncation.rate_scale += rate * n2;
            }
        }
    }
    return g;
}

LindbladGenerator build_generator(const HarmonicDecomposition& h, const std::vector<SpectralDensity>& sds,
                                  double rel_tol, int max_q) {
    if (!(rel_tol > 0.0)) throw ValidationError("build_generator: rel_tol must be positive");
    if (sds.size() != h.num_couplings())
        throw ValidationError("build_generator: need one spectral density per coupling");

    const double omega = h.drive_frequency();
    int q = std::max(h.q_max(), 8);
    while (true) {
        const HarmonicDecomposition hq =
            q == h.q_max() ? h : harmonic_decomposition(h.model(), h.couplings(), q);
        LindbladGenerator g = assemble_generator(hq, sds);
        double tail = 0.0;
        for (std::size_t alpha = 0; alpha < hq.num_couplings(); ++alpha) {
            const double t2 = hq.tail_norm2(alpha);
            if (t2 == 0.0) continue;
            try {
                // Tail harmonics satisfy |ω + qΩ| ≥ q_max Ω since |ω| < Ω.
                tail += sds[alpha].sup_beyond(q * omega) * t2;
            } catch (const ExtrapolationError& e) {
                throw TruncationError(std::string("generator: cannot bound the harmonic tail: ") + e.what());
            }
        }
        g.truncation.tail_bound = tail;
        if (tail <= rel_tol * g.truncation.rate_scale) return g;
        if (q > max_q / 2)
            throw TruncationError("generator: tail bound " + std::to_string(tail) + " still above tolerance at q_max = " +
                                  std::to_string(q));
        q *= 2;
    }
}

// --------------------------- Closed-form rates ------------------------------

double suppression_factor(double u) {
    if (u < 0.1) {
        // 1 − tanh(u)/u = u²/3 − 2u⁴/15 + 17u⁶/315 − 62u⁸/2835 + 1382u¹⁰/155925 − …
        const double u2 = u * u;
        return u2 * (1.0 / 3.0 + u2 * (-2.0 / 15.0 + u2 * (17.0 / 315.0 + u2 * (-62.0 / 2835.0 + u2 * 1382.0 / 155925.0))));
    }
    return 1.0 - std::tanh(u) / u;
}

RateResult rate_parallel_closed(double T, double T2, double tau_c) {
    require_positive(T, "T");
    require_positive(T2, "T2");
    require_positive(tau_c, "tau_c");
    const double eta = suppression_factor(T / (2.0 * tau_c)) / T2;
    return {eta, {{"T", T}, {"T2", T2}, {"tau_c", tau_c}}};
}

RateResult rate_perp_closed(double Omega, double A, double omega_cut) {
    require_positive(Omega, "Omega");
    require_positive(A, "A");
    require_positive(omega_cut, "omega_cut");
    const double x = Omega / omega_cut;
    const double z = std::exp(-0.5 * x);
    const double one_minus_z2 = -std::expm1(-x);
    const double eta = A * Omega * Omega * Omega / (2.0 * std::numbers::pi * std::numbers::pi) * z * (1.0 + z * z) /
                       (one_minus_z2 * one_minus_z2);
    return {eta, {{"Omega", Omega}, {"A", A}, {"omega_cut", omega_cut}}};
}

RateResult combine_rates(const std::vector<RateResult>& etas) {
    RateResult out;
    for (const auto& r : etas) out.eta += r.eta;
    out.meta["count"] = static_cast<double>(etas.size());
    return out;
}

// --------------------------- Semigroup and checks ---------------------------

Superoperator semigroup(const LindbladGenerator& g, double t) {
    if (!(t >= 0.0)) throw DomainError("semigroup: t must be non-negative");
    return expm_general(g.superop, t);
}

ComplexMatrix choi_matrix(const Superoperator& map) {
    const Index d = map.dim;
    ComplexMatrix choi = ComplexMatrix::Zero(d * d, d * d);
    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
            ComplexMatrix unit = ComplexMatrix::Zero(d, d);
            unit(i, j) = 1.0;
            choi += kron(unit, apply_map(map, unit));
        }
    }
    return choi;
}

CptpReport verify_cptp(const Superoperator& map) {
    const Index d = map.dim;
    CptpReport r;
    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
            ComplexMatrix unit = ComplexMatrix::Zero(d, d);
            unit(i, j) = 1.0;
            const cplx tr = apply_map(map, unit).trace();
            r.trace_defect = std::max(r.trace_defect, std::abs(tr - (i == j ? 1.0 : 0.0)));
        }
    }
    const ComplexMatrix c = choi_matrix(map);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (c + c.adjoint()), Eigen::EigenvaluesOnly);
    r.choi_min_eig = es.eigenvalues().minCoeff();
    return r;
}

Superoperator to_floquet_basis(const Superoperator& s, const ComplexMatrix& basis) {
    const ComplexMatrix fwd = kron(basis.transpose(), basis.adjoint());
    const ComplexMatrix back = kron(basis.conjugate(), basis);
    return Superoperator{s.dim, fwd * s.matrix * back};
}

double block_coupling_defect(const LindbladGenerator& g) {
    const Superoperator lf = to_floquet_basis(g.superop, g.floquet_basis);
    const Index d = g.dim;
    double worst = 0.0;
    for (Index c = 0; c < d * d; ++c) {
        const bool c_diag = (c % d) == (c / d);
        for (Index r = 0; r < d * d; ++r) {
            const bool r_diag = (r % d) == (r / d);
            if (r_diag != c_diag) worst = std::max(worst, std::abs(lf.matrix(r, c)));
        }
    }
    return worst;
}

TlsDecayRates tls_decay_rates(const LindbladGenerator& g) {
    if (g.dim != 2) throw DimensionError("tls_decay_rates: requires a two-level generator");
    const ComplexMatrix lf = to_floquet_basis(g.superop, g.floquet_basis).matrix;
    // vec index of E_ij is i + 2j: E00 → 0, E10 → 1, E01 → 2, E11 → 3
    const double coherence = -lf(2, 2).real();
    const double a = (lf(0, 0) - lf(0, 3)).real();
    const double b = (lf(3, 0) - lf(3, 3)).real();
    return {coherence, -0.5 * (a - b)};
}

double generator_trace_defect(const Superoperator& gen) {
    const ComplexVector dual = vec(identity(gen.dim));
    return gen.dim == 0 ? 0.0 : (dual.adjoint() * gen.matrix).cwiseAbs().maxCoeff();
}

double generator_hermiticity_defect(const Superoperator& gen) {
    const Index d = gen.dim;
    double worst = 0.0;
    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
            ComplexMatrix eij = ComplexMatrix::Zero(d, d), eji = ComplexMatrix::Zero(d, d);
            eij(i, j) = 1.0;
            eji(j, i) = 1.0;
            const ComplexMatrix diff = apply_map(gen, eij).adjoint() - apply_map(gen, eji);
            worst = std::max(worst, diff.cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

} // namespace kicked
