// floquet.cpp — Floquet operator, quasienergies, sawtooth propagator, harmonics

#include "kicked/floquet.hpp"
#include "kicked/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace kicked {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kClusterTol = 1e-9; // relative to Ω

// ∫_0^1 e^{i x s} ds
cplx unit_interval_integral(double x) {
    const double y = 0.5 * x;
    const double sinc = std::abs(y) < 1e-8 ? 1.0 - y * y / 6.0 : std::sin(y) / y;
    return std::polar(sinc, y);
}

ComplexMatrix phase_diagonal(const Eigen::VectorXd& energies, double time) {
    ComplexVector d(energies.size());
    for (Index k = 0; k < energies.size(); ++k) d(k) = std::polar(1.0, -energies(k) * time);
    return d.asDiagonal();
}

} // namespace

// --------------------------- KickedModel ------------------------------------

KickedModel::KickedModel(HermitianOperator h0, HermitianOperator w, double lambda, double period)
    : h0_(std::move(h0)), w_(std::move(w)), lambda_(lambda), period_(period) {
    if (!(period_ > 0.0) || !std::isfinite(period_))
        throw ValidationError("KickedModel: period must be positive and finite");
    if (!std::isfinite(lambda_)) throw ValidationError("KickedModel: non-finite kick strength");
    if (h0_.dim() != w_.dim()) throw DimensionError("KickedModel: H0 and W dimensions differ");
}

double KickedModel::drive_frequency() const noexcept {
    return kTwoPi / period_;
}

KickClock split_time(double t, double period) {
    const double x = t / period;
    const double r = std::round(x);
    if (std::abs(x - r) <= 1e-12 * std::max(1.0, std::abs(x)))
        return {static_cast<std::int64_t>(r), 0.0};
    const double n = std::floor(x);
    return {static_cast<std::int64_t>(n), x - n};
}

// --------------------------- Floquet operator -------------------------------

ComplexMatrix floquet_operator(const KickedModel& m) {
    return expm_hermitian(m.kick(), -m.lambda()) * expm_hermitian(m.h0(), -m.period());
}

FloquetDecomposition decompose(const KickedModel& m) {
    const ComplexMatrix u = floquet_operator(m);
    const double period = m.period();
    const double omega = m.drive_frequency();
    const Index d = m.dim();

    Eigen::ComplexSchur<ComplexMatrix> schur(u);
    if (schur.info() != Eigen::Success) throw NumericError("decompose: Schur factorization failed");
    const ComplexMatrix& q = schur.matrixU();
    const ComplexMatrix& tri = schur.matrixT();

    std::vector<double> eps(static_cast<std::size_t>(d));
    for (Index k = 0; k < d; ++k) {
        double e = -std::arg(tri(k, k)) / period;
        if (e < -0.5 * omega + 1e-12 * omega) e += omega;
        eps[static_cast<std::size_t>(k)] = e;
    }

    std::vector<Index> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return eps[a] < eps[b]; });

    FloquetDecomposition f{u, HermitianOperator(ComplexMatrix::Zero(d, d)), {}, ComplexMatrix(d, d), period};
    for (Index k = 0; k < d; ++k) {
        const Index src = order[static_cast<std::size_t>(k)];
        ComplexVector v = q.col(src);
        for (Index i = d - 1; i >= 0; --i) {
            const double mod = std::abs(v(i));
            if (mod > 1e-8) {
                v *= std::conj(v(i)) / mod;
                break;
            }
        }
        f.basis.col(k) = v;
        f.quasienergies.push_back(eps[static_cast<std::size_t>(src)]);
    }
    Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(f.quasienergies.data(), d);
    const ComplexMatrix hbar = f.basis * e.cast<cplx>().asDiagonal() * f.basis.adjoint();
    f.hbar = HermitianOperator(0.5 * (hbar + hbar.adjoint()));
    return f;
}

// --------------------------- Propagator -------------------------------------

KickedPropagator::KickedPropagator(const KickedModel& m) : KickedPropagator(m, decompose(m)) {}

KickedPropagator::KickedPropagator(const KickedModel& m, FloquetDecomposition f)
    : model_(m), floquet_(std::move(f)) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(model_.h0().matrix());
    h0_energies_ = es.eigenvalues();
    h0_basis_ = es.eigenvectors();
}

ComplexMatrix KickedPropagator::evaluate(const KickClock& c) const {
    const double period = model_.period();
    const Index d = model_.dim();
    const ComplexMatrix free = h0_basis_ * phase_diagonal(h0_energies_, period * c.s) * h0_basis_.adjoint();
    // e^{i H̄ T{t/T}} e^{−i H̄ t} = e^{−i H̄ T ⌊t/T⌋}
    Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(floquet_.quasienergies.data(), d);
    const ComplexMatrix stroboscopic =
        floquet_.basis * phase_diagonal(e, period * static_cast<double>(c.n)) * floquet_.basis.adjoint();
    return free * stroboscopic;
}

ComplexMatrix KickedPropagator::operator()(double t) const {
    if (!(t >= 0.0)) throw DomainError("propagator: t must be non-negative");
    return evaluate(split_time(t, model_.period()));
}

ComplexMatrix KickedPropagator::left_limit(double t) const {
    if (!(t >= 0.0)) throw DomainError("propagator: t must be non-negative");
    KickClock c = split_time(t, model_.period());
    if (c.s == 0.0 && c.n >= 1) c = {c.n - 1, 1.0};
    return evaluate(c);
}

ComplexMatrix propagator(const KickedModel& m, double t) {
    if (!(t >= 0.0)) throw DomainError("propagator: t must be non-negative");
    return KickedPropagator(m)(t);
}

// --------------------------- Harmonic decomposition -------------------------

HarmonicDecomposition::HarmonicDecomposition(const KickedModel& model,
                                             std::vector<HermitianOperator> couplings,
                                             FloquetDecomposition floquet, int q_max)
    : model_(model), couplings_(std::move(couplings)), floquet_(std::move(floquet)), q_max_(q_max),
      zero_(ComplexMatrix::Zero(model.dim(), model.dim())) {}

std::size_t HarmonicDecomposition::frequency_index(Index k, Index l) const {
    return pair_to_frequency_.at(static_cast<std::size_t>(k * dim() + l));
}

std::size_t HarmonicDecomposition::slot(std::size_t alpha, std::size_t w, int q) const {
    const std::size_t nq = static_cast<std::size_t>(2 * q_max_ + 1);
    const std::size_t nw = frequencies_.size();
    return (alpha * nq + static_cast<std::size_t>(q + q_max_)) * nw + w;
}

const ComplexMatrix& HarmonicDecomposition::component(std::size_t alpha, std::size_t w, int q) const {
    if (alpha >= couplings_.size() || w >= frequencies_.size())
        throw std::out_of_range("HarmonicDecomposition::component: index out of range");
    if (q < -q_max_ || q > q_max_) return zero_;
    return components_[slot(alpha, w, q)];
}

ComplexMatrix HarmonicDecomposition::component_computational(std::size_t alpha, std::size_t w, int q) const {
    return floquet_.basis * component(alpha, w, q) * floquet_.basis.adjoint();
}

double HarmonicDecomposition::total_norm2(std::size_t alpha) const {
    return total_norm2_.at(alpha);
}

double HarmonicDecomposition::tail_norm2(std::size_t alpha) const {
    const double total = total_norm2_.at(alpha);
    const double tail = total - kept_norm2_.at(alpha);
    return tail <= 1e-13 * total ? 0.0 : tail;
}

HarmonicDecomposition harmonic_decomposition(const KickedModel& m,
                                             const std::vector<HermitianOperator>& couplings,
                                             int q_max) {
    if (q_max < 1) throw ValidationError("harmonic_decomposition: q_max must be >= 1");
    for (const auto& s : couplings)
        if (s.dim() != m.dim()) throw DimensionError("harmonic_decomposition: coupling dimension mismatch");

    HarmonicDecomposition h(m, couplings, decompose(m), q_max);
    const Index d = m.dim();
    const double period = m.period();
    const double omega = m.drive_frequency();
    const auto& eps = h.floquet_.quasienergies;

    // Cluster ε_k − ε_l.
    std::vector<double> diffs;
    for (Index k = 0; k < d; ++k)
        for (Index l = 0; l < d; ++l) diffs.push_back(eps[k] - eps[l]);
    std::vector<double> sorted = diffs;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<double, double>> clusters; // [min, max]
    for (double x : sorted) {
        if (clusters.empty() || x - clusters.back().second > kClusterTol * omega)
            clusters.push_back({x, x});
        else
            clusters.back().second = x;
    }
    for (const auto& c : clusters) h.frequencies_.push_back(0.5 * (c.first + c.second));
    h.pair_to_frequency_.resize(diffs.size());
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        for (std::size_t w = 0; w < clusters.size(); ++w) {
            if (diffs[i] >= clusters[w].first && diffs[i] <= clusters[w].second) {
                h.pair_to_frequency_[i] = w;
                break;
            }
        }
    }

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m.h0().matrix());
    const Eigen::VectorXd& h0e = es.eigenvalues();
    const ComplexMatrix& b = es.eigenvectors();
    const ComplexMatrix g = h.floquet_.basis.adjoint() * b; // ⟨φ_k|u_a⟩

    const std::size_t nw = h.frequencies_.size();
    const std::size_t nq = static_cast<std::size_t>(2 * q_max + 1);
    h.components_.assign(couplings.size() * nq * nw, ComplexMatrix::Zero(d, d));
    h.total_norm2_.resize(couplings.size());
    h.kept_norm2_.assign(couplings.size(), 0.0);

    for (std::size_t alpha = 0; alpha < couplings.size(); ++alpha) {
        const ComplexMatrix& s = couplings[alpha].matrix();
        h.total_norm2_[alpha] = s.squaredNorm();
        const ComplexMatrix s0 = b.adjoint() * s * b;
        for (Index k = 0; k < d; ++k) {
            for (Index l = 0; l < d; ++l) {
                const std::size_t w = h.frequency_index(k, l);
                // Terms C e^{i μ T s} of ⟨φ_k|P(t)† S P(t)|φ_l⟩, s = {t/T}.
                std::vector<cplx> coef;
                std::vector<double> phase;
                for (Index a = 0; a < d; ++a) {
                    for (Index bb = 0; bb < d; ++bb) {
                        const cplx c = g(k, a) * s0(a, bb) * std::conj(g(l, bb));
                        if (c == cplx(0.0)) continue;
                        coef.push_back(c);
                        phase.push_back((h0e(a) - h0e(bb) - eps[k] + eps[l]) * period);
                    }
                }
                for (int q = -q_max; q <= q_max; ++q) {
                    cplx sum = 0.0;
                    for (std::size_t j = 0; j < coef.size(); ++j)
                        sum += coef[j] * unit_interval_integral(phase[j] - 2.0 * std::numbers::pi * q);
                    h.components_[h.slot(alpha, w, q)](k, l) = sum;
                    h.kept_norm2_[alpha] += std::norm(sum);
                }
            }
        }
    }
    return h;
}

ComplexMatrix reconstruct_heisenberg(const HarmonicDecomposition& h, std::size_t alpha, double t) {
    const Index d = h.dim();
    const double omega = h.drive_frequency();
    ComplexMatrix acc = ComplexMatrix::Zero(d, d);
    for (std::size_t w = 0; w < h.frequencies().size(); ++w)
        for (int q = -h.q_max(); q <= h.q_max(); ++q)
            acc += h.component(alpha, w, q) * std::polar(1.0, (h.frequencies()[w] + q * omega) * t);
    const ComplexMatrix& v = h.floquet().basis;
    return v * acc * v.adjoint();
}

} // namespace kicked
