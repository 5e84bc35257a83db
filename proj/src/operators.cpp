// operators.cpp — Dense operator algebra

#include "kicked/operators.hpp"
#include "kicked/errors.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>

namespace kicked {

namespace {

bool all_finite(const ComplexMatrix& m) {
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

double hermiticity_defect(const ComplexMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

void require_square_finite(const ComplexMatrix& m, const char* what) {
    if (m.rows() == 0 || m.rows() != m.cols())
        throw ValidationError(std::string(what) + ": matrix must be square and non-empty");
    if (!all_finite(m)) throw ValidationError(std::string(what) + ": non-finite entries");
}

} // namespace

// --------------------------- Validated types --------------------------------

HermitianOperator::HermitianOperator(const ComplexMatrix& m) {
    require_square_finite(m, "HermitianOperator");
    const double defect = hermiticity_defect(m);
    if (defect > kHermitianTol)
        throw ValidationError("HermitianOperator: not Hermitian (defect " + std::to_string(defect) + ")");
    m_ = 0.5 * (m + m.adjoint());
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m) {
    require_square_finite(m, "DensityMatrix");
    if (hermiticity_defect(m) > kHermitianTol)
        throw InvalidStateError("DensityMatrix: not Hermitian");
    m_ = 0.5 * (m + m.adjoint());
    const double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol)
        throw InvalidStateError("DensityMatrix: trace " + std::to_string(tr) + " != 1");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol)
        throw InvalidStateError("DensityMatrix: not positive semidefinite");
}

DensityMatrix DensityMatrix::maximally_mixed(Index d) {
    return DensityMatrix(identity(d) / static_cast<double>(d));
}

double DensityMatrix::purity() const {
    return (m_ * m_).trace().real();
}

double BlochVector::norm() const {
    return std::sqrt(x1 * x1 + x2 * x2 + x3 * x3);
}

Superoperator Superoperator::identity(Index d) {
    return Superoperator{d, ComplexMatrix::Identity(d * d, d * d)};
}

Superoperator Superoperator::zero(Index d) {
    return Superoperator{d, ComplexMatrix::Zero(d * d, d * d)};
}

// --------------------------- Helpers ----------------------------------------

ComplexMatrix identity(Index d) {
    return ComplexMatrix::Identity(d, d);
}

ComplexMatrix sigma_x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0,
         1.0, 0.0;
    return m;
}

ComplexMatrix sigma_y() {
    ComplexMatrix m(2, 2);
    m << 0.0, cplx(0.0, -1.0),
         cplx(0.0, 1.0), 0.0;
    return m;
}

ComplexMatrix sigma_z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0,
         0.0, -1.0;
    return m;
}

ComplexVector vec(const ComplexMatrix& m) {
    return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, Index d) {
    if (v.size() != d * d) throw DimensionError("unvec: length is not d²");
    return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

double operator_norm(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

double unitarity_defect(const ComplexMatrix& u) {
    return operator_norm(u.adjoint() * u - identity(u.rows()));
}

// --------------------------- Bloch ------------------------------------------

BlochVector bloch_from_density(const DensityMatrix& rho) {
    if (rho.dim() != 2) throw DimensionError("bloch_from_density: requires a 2×2 density matrix");
    const auto& r = rho.matrix();
    return BlochVector{2.0 * r(1, 0).real(), 2.0 * r(1, 0).imag(), 2.0 * r(0, 0).real() - 1.0};
}

DensityMatrix density_from_bloch(const BlochVector& x) {
    if (!(x.norm() <= 1.0 + 1e-12))
        throw InvalidStateError("density_from_bloch: |x| > 1");
    ComplexMatrix r(2, 2);
    r << 0.5 * (1.0 + x.x3), 0.5 * cplx(x.x1, -x.x2),
         0.5 * cplx(x.x1, x.x2), 0.5 * (1.0 - x.x3);
    return DensityMatrix(r);
}

// --------------------------- Exponentials -----------------------------------

ComplexMatrix expm_hermitian(const HermitianOperator& h, double s) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix());
    if (es.info() != Eigen::Success) throw NumericError("expm_hermitian: eigendecomposition failed");
    const Eigen::VectorXd& w = es.eigenvalues();
    ComplexVector phase(w.size());
    for (Index k = 0; k < w.size(); ++k) phase(k) = std::polar(1.0, s * w(k));
    const ComplexMatrix& v = es.eigenvectors();
    return v * phase.asDiagonal() * v.adjoint();
}

ComplexMatrix expm_general(const ComplexMatrix& m, double t) {
    if (m.rows() != m.cols()) throw DimensionError("expm_general: matrix must be square");
    if (!all_finite(m) || !std::isfinite(t)) throw NumericError("expm_general: non-finite input");
    ComplexMatrix scaled = t * m;
    ComplexMatrix out = scaled.exp();
    if (!all_finite(out)) throw NumericError("expm_general: overflow");
    return out;
}

Superoperator expm_general(const Superoperator& s, double t) {
    return Superoperator{s.dim, expm_general(s.matrix, t)};
}

// --------------------------- Superoperators ---------------------------------

Superoperator vectorize(Index d, const LinearMap& map) {
    const Index n = d * d;
    Superoperator out{d, ComplexMatrix::Zero(n, n)};
    for (Index j = 0; j < d; ++j) {
        for (Index i = 0; i < d; ++i) {
            ComplexMatrix unit = ComplexMatrix::Zero(d, d);
            unit(i, j) = 1.0;
            const ComplexMatrix image = map(unit);
            if (image.rows() != d || image.cols() != d)
                throw DimensionError("vectorize: map changed the matrix dimension");
            out.matrix.col(i + j * d) = vec(image);
        }
    }
    return out;
}

Superoperator unitary_conjugation(const ComplexMatrix& u) {
    return Superoperator{u.rows(), kron(u.conjugate(), u)};
}

ComplexMatrix apply_map(const Superoperator& s, const ComplexMatrix& rho) {
    if (rho.rows() != s.dim || rho.cols() != s.dim) throw DimensionError("apply_map: dimension mismatch");
    return unvec(s.matrix * vec(rho), s.dim);
}

Superoperator compose(const Superoperator& a, const Superoperator& b) {
    if (a.dim != b.dim) throw DimensionError("compose: dimension mismatch");
    return Superoperator{a.dim, a.matrix * b.matrix};
}

} // namespace kicked
