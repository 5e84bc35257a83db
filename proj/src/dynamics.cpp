// dynamics.cpp — Frame-aware evolution and closed-form TLS trajectories

#include "kicked/dynamics.hpp"
#include "kicked/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace kicked {

namespace {

KickClock clock_at(double t, double period, KickSide side) {
    KickClock c = split_time(t, period);
    if (side == KickSide::before && c.s == 0.0 && c.n >= 1) c = {c.n - 1, 1.0};
    return c;
}

double parity(std::int64_t n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// e^{−iω t σ³/2}
ComplexMatrix carrier(double omega_ext, double t) {
    ComplexMatrix u = ComplexMatrix::Zero(2, 2);
    u(0, 0) = std::polar(1.0, -0.5 * omega_ext * t);
    u(1, 1) = std::polar(1.0, 0.5 * omega_ext * t);
    return u;
}

DensityMatrix hermitian_state(const ComplexMatrix& m) {
    return DensityMatrix(0.5 * (m + m.adjoint()));
}

void require_tls(const DensityMatrix& rho) {
    if (rho.dim() != 2) throw DimensionError("closed-form trajectory: two-level state required");
}

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("closed-form trajectory: t must be finite and >= 0");
}

} // namespace

TLSParams TLSParams::make(double omega0, double omega_ext, double T, double eta) {
    if (!std::isfinite(omega0) || !std::isfinite(omega_ext))
        throw ValidationError("TLSParams: frequencies must be finite");
    if (!(T > 0.0) || !std::isfinite(T)) throw ValidationError("TLSParams: T must be positive and finite");
    if (!(eta >= 0.0) || !std::isfinite(eta)) throw ValidationError("TLSParams: eta must be non-negative");
    return {omega0, omega_ext, omega0 - omega_ext, T, eta};
}

KickedModel magic_angle_model(const TLSParams& p) {
    return KickedModel(HermitianOperator(0.5 * p.Delta * sigma_z()), HermitianOperator(sigma_x()),
                       0.5 * std::numbers::pi, p.T);
}

// --------------------------- Engine path ------------------------------------

DensityMatrix evolve_state(const KickedPropagator& u, const LindbladGenerator& g, const DensityMatrix& rho0,
                           double t, Frame frame, const EvolveOptions& opt) {
    if (rho0.dim() != g.dim || u.model().dim() != g.dim)
        throw DimensionError("evolve: state, model and generator dimensions differ");
    if (frame == Frame::lab && g.dim != 2) throw UnsupportedError("evolve: lab frame is defined for d = 2 only");
    ComplexMatrix rho = apply_map(semigroup(g, t), rho0.matrix());
    if (frame == Frame::interaction) return hermitian_state(rho);
    const ComplexMatrix ut = opt.side == KickSide::before ? u.left_limit(t) : u(t);
    rho = ut * rho * ut.adjoint();
    if (frame == Frame::lab) {
        const ComplexMatrix u0 = carrier(opt.omega_ext, t);
        rho = u0 * rho * u0.adjoint();
    }
    return hermitian_state(rho);
}

Trajectory evolve(const KickedModel& m, const LindbladGenerator& g, const DensityMatrix& rho0,
                  const std::vector<double>& times, Frame frame, const EvolveOptions& opt) {
    if (frame == Frame::lab && m.dim() != 2) throw UnsupportedError("evolve: lab frame is defined for d = 2 only");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0) || !std::isfinite(times[i]))
            throw ValidationError("evolve: sample times must be finite and non-negative");
        if (i > 0 && !(times[i] > times[i - 1])) throw ValidationError("evolve: times must be strictly increasing");
    }
    const KickedPropagator u(m);
    Trajectory tr;
    tr.frame = frame;
    tr.times = times;
    tr.states.reserve(times.size());
    for (double t : times) tr.states.push_back(evolve_state(u, g, rho0, t, frame, opt));
    return tr;
}

// --------------------------- Closed forms -----------------------------------

BlochVector closed_form_parallel_bloch(const TLSParams& p, const BlochVector& x0, double t, KickSide side) {
    require_time(t);
    const KickClock c = clock_at(t, p.T, side);
    const double phi0 = -0.5 * p.Delta * p.T;
    const double phi = p.omega_ext * t + p.Delta * p.T * (c.s - 0.5);
    const double fast = std::exp(-2.0 * p.eta * t);
    const double slow = parity(c.n) * std::exp(-p.eta * t);
    const double a = x0.x1 * std::cos(phi0) + x0.x2 * std::sin(phi0);
    const double b = x0.x1 * std::sin(phi0) - x0.x2 * std::cos(phi0);
    return {fast * std::cos(phi) * a + slow * std::sin(phi) * b, fast * std::sin(phi) * a - slow * std::cos(phi) * b,
            slow * x0.x3};
}

DensityMatrix closed_form_parallel(const TLSParams& p, const DensityMatrix& rho0, double t, KickSide side) {
    require_tls(rho0);
    if (t == 0.0) return rho0;
    const BlochVector x = closed_form_parallel_bloch(p, bloch_from_density(rho0), t, side);
    return density_from_bloch(x);
}

DensityMatrix closed_form_perp(const TLSParams& p, const DensityMatrix& rho0, double t, KickSide side) {
    require_tls(rho0);
    require_time(t);
    if (p.Delta != 0.0) throw UnsupportedError("closed_form_perp: only the resonant case Delta = 0 is covered");
    if (t == 0.0) return rho0;
    const KickClock c = clock_at(t, p.T, side);
    const BlochVector x0 = bloch_from_density(rho0);
    const double fast = std::exp(-2.0 * p.eta * t);
    const double slow = parity(c.n) * std::exp(-p.eta * t);
    const double w = p.omega0 * t;
    return density_from_bloch({fast * x0.x1 * std::cos(w) - slow * x0.x2 * std::sin(w),
                               fast * x0.x1 * std::sin(w) + slow * x0.x2 * std::cos(w), slow * x0.x3});
}

// --------------------------- Relaxation times -------------------------------

double t1_time(const SpectralDensity& sd, double omega0, double beta) {
    if (!(beta >= 0.0)) throw ValidationError("t1_time: beta must be >= 0");
    const double g = sd(omega0);
    if (g == 0.0) return std::numeric_limits<double>::infinity();
    const double boltzmann = std::isinf(beta) ? 0.0 : std::exp(-beta * omega0);
    return 1.0 / ((1.0 + boltzmann) * g);
}

double t2_prime(double T1, double T2) {
    if (!(T1 > 0.0) || !(T2 > 0.0)) throw ValidationError("t2_prime: times must be positive");
    return 1.0 / (1.0 / T2 + 0.5 / T1);
}

} // namespace kicked
