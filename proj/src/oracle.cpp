// oracle.cpp — Brute-force reference computations

#include "kicked/oracle.hpp"
#include "kicked/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace kicked {

namespace {

constexpr cplx kI{0.0, 1.0};

// Multiply u on the left by the evolution over `length` under constant h,
// split into `steps` equal exponentials.
void advance(ComplexMatrix& u, const ComplexMatrix& step, int steps) {
    for (int k = 0; k < steps; ++k) u = step * u;
}

} // namespace

void RegularizationSpec::validate(double period) const {
    if (!(pulse_width > 0.0)) throw ValidationError("RegularizationSpec: pulse width must be positive");
    if (pulse_width > period / 100.0) throw ValidationError("RegularizationSpec: pulse width must be <= T/100");
    if (steps_per_pulse < 10) throw ValidationError("RegularizationSpec: steps_per_pulse must be >= 10");
    if (steps_per_free_segment < 100)
        throw ValidationError("RegularizationSpec: steps_per_free_segment must be >= 100");
}

ComplexMatrix regularized_propagator(const KickedModel& m, double t, const RegularizationSpec& r) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("regularized_propagator: t must be finite and >= 0");
    const double period = m.period();
    r.validate(period);
    const double eps = r.pulse_width;
    const ComplexMatrix h_free = m.h0().matrix();
    const ComplexMatrix h_pulse = h_free + (m.lambda() / eps) * m.kick().matrix();

    const double free_len = period - eps;
    const ComplexMatrix free_step = expm_general(ComplexMatrix(-kI * h_free), free_len / r.steps_per_free_segment);
    const ComplexMatrix pulse_step = expm_general(ComplexMatrix(-kI * h_pulse), eps / r.steps_per_pulse);

    ComplexMatrix u = identity(m.dim());
    double remaining = t;
    while (remaining > 0.0) {
        if (remaining < free_len) {
            u = expm_general(ComplexMatrix(-kI * h_free), remaining) * u;
            break;
        }
        advance(u, free_step, r.steps_per_free_segment);
        remaining -= free_len;
        if (remaining < eps) {
            u = expm_general(ComplexMatrix(-kI * h_pulse), remaining) * u;
            break;
        }
        advance(u, pulse_step, r.steps_per_pulse);
        remaining -= eps;
    }
    return u;
}

QuadratureHarmonics quadrature_harmonics(const KickedModel& m, const FloquetDecomposition& f,
                                         const HermitianOperator& s, int q_max, int n_samples) {
    if (q_max < 0) throw ValidationError("quadrature_harmonics: q_max must be >= 0");
    if (n_samples < 8 * q_max || n_samples < 1)
        throw ValidationError("quadrature_harmonics: need n_samples >= 8 q_max");
    const Index d = m.dim();
    if (s.dim() != d || f.basis.rows() != d) throw DimensionError("quadrature_harmonics: dimension mismatch");

    const double period = m.period();
    const ComplexMatrix& v = f.basis;
    Eigen::VectorXcd eps(d);
    for (Index k = 0; k < d; ++k) eps(k) = f.quasienergies[static_cast<std::size_t>(k)];
    const ComplexMatrix hbar = v * eps.asDiagonal() * v.adjoint();
    const ComplexMatrix gen_free = -kI * m.h0().matrix();
    const ComplexMatrix gen_back = kI * hbar;

    QuadratureHarmonics out;
    out.q_max = q_max;
    out.coefficients.assign(static_cast<std::size_t>(2 * q_max + 1), ComplexMatrix::Zero(d, d));
    const double w = 1.0 / n_samples;
    for (int j = 0; j < n_samples; ++j) {
        const double frac = (j + 0.5) * w;
        const ComplexMatrix p = expm_general(gen_free, period * frac) * expm_general(gen_back, period * frac);
        const ComplexMatrix fk = v.adjoint() * p.adjoint() * s.matrix() * p * v;
        for (int q = -q_max; q <= q_max; ++q) {
            const cplx phase = std::polar(w, -2.0 * std::numbers::pi * q * frac);
            out.coefficients[static_cast<std::size_t>(q + q_max)] += phase * fk;
        }
    }
    return out;
}

DensityMatrix integrate_master_equation(const LindbladGenerator& g, const DensityMatrix& rho0, double t,
                                        double dt) {
    if (!(t >= 0.0)) throw DomainError("integrate_master_equation: t must be >= 0");
    if (!(dt > 0.0)) throw ValidationError("integrate_master_equation: dt must be positive");
    if (rho0.dim() != g.dim) throw DimensionError("integrate_master_equation: dimension mismatch");
    const ComplexMatrix& l = g.superop.matrix;
    const double norm = operator_norm(l);
    if (norm == 0.0 || t == 0.0) return rho0;
    if (dt > (0.01 / norm) * (1.0 + 1e-12))
        throw StabilityError("integrate_master_equation: dt = " + std::to_string(dt) + " exceeds 0.01/||L|| = " +
                             std::to_string(0.01 / norm));

    const long steps = static_cast<long>(std::ceil(t / dt));
    const double h = t / static_cast<double>(steps);
    ComplexVector y = vec(rho0.matrix());
    for (long k = 0; k < steps; ++k) {
        const ComplexVector k1 = l * y;
        const ComplexVector k2 = l * (y + 0.5 * h * k1);
        const ComplexVector k3 = l * (y + 0.5 * h * k2);
        const ComplexVector k4 = l * (y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    const ComplexMatrix rho = unvec(y, g.dim);
    return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

// --------------------------- Rate series ------------------------------------

SeriesRate series_rate(const std::function<double(double)>& gamma, double Omega, int q_max) {
    if (q_max < 0) throw ValidationError("series_rate: q_max must be >= 0");
    if (!(Omega > 0.0)) throw ValidationError("series_rate: Omega must be positive");
    // q and −q−1 share the weight 1/(2q+1)²; add from the small end.
    double sum = 0.0;
    for (int k = q_max; k >= 0; --k) {
        const double w = (k + 0.5) * Omega;
        const double odd = 2.0 * k + 1.0;
        sum += (gamma(w) + gamma(-w)) / (odd * odd);
    }
    return {4.0 / (std::numbers::pi * std::numbers::pi) * sum, 0.0, q_max};
}

SeriesRate series_rate_parallel(double T, double T2, double tau_c, int q_max) {
    if (!(T > 0.0) || !(T2 > 0.0) || !(tau_c > 0.0)) throw ValidationError("series_rate_parallel: positive inputs");
    auto lorentz = [&](double w) { return (1.0 / T2) / (1.0 + tau_c * tau_c * w * w); };
    const double Omega = 2.0 * std::numbers::pi / T;
    SeriesRate s = series_rate(lorentz, Omega, q_max);
    // γ decreases in |ω|, and Σ_{j>q_max} (2j+1)^{-2} ≤ 1/(4(q_max+1)).
    s.tail = 8.0 / (std::numbers::pi * std::numbers::pi) * lorentz((q_max + 1.5) * Omega) / (4.0 * (q_max + 1.0));
    return s;
}

SeriesRate series_rate_parallel_adaptive(double T, double T2, double tau_c, double rel_tol) {
    if (!(rel_tol > 0.0)) throw ValidationError("series_rate_parallel_adaptive: rel_tol must be positive");
    for (int q = 16; q <= (1 << 24); q *= 2) {
        const SeriesRate s = series_rate_parallel(T, T2, tau_c, q);
        if (s.tail <= rel_tol * s.rate) return s;
    }
    throw TruncationError("series_rate_parallel_adaptive: no convergence below q_max = 2^24");
}

SeriesRate series_rate_perp(double Omega, double A, double omega_cut, double rel_tol) {
    if (!(Omega > 0.0) || !(A > 0.0) || !(omega_cut > 0.0))
        throw ValidationError("series_rate_perp: positive inputs");
    const double pref = 4.0 / (std::numbers::pi * std::numbers::pi);
    auto term = [&](long q) {
        const double w = (q + 0.5) * Omega;
        const double odd = 2.0 * q + 1.0;
        return pref * A * w * w * w * std::exp(-w / omega_cut) / (odd * odd);
    };
    const double decay = std::exp(-Omega / omega_cut);
    double sum = 0.0;
    for (long q = 0; q < 100000000; ++q) {
        const double tq = term(q);
        sum += tq;
        // Successive ratios ((2q+3)/(2q+1)) e^{−Ω/ω_cut} shrink with q.
        const double ratio = (2.0 * q + 3.0) / (2.0 * q + 1.0) * decay;
        if (ratio < 1.0) {
            const double tail = tq * ratio / (1.0 - ratio);
            if (tail <= rel_tol * sum) return {sum, tail, static_cast<int>(q)};
        }
    }
    throw TruncationError("series_rate_perp: series did not converge");
}

} // namespace kicked
