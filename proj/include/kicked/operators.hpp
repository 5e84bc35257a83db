// operators.hpp — Dense operator algebra: Hermitian and density matrices, Bloch
// vectors, column-stacked superoperators and matrix exponentials.
//
// Vectorization convention (global): vec(X) stacks the columns of X, so that
// vec(A X B) = (B^T ⊗ A) vec(X). Eigen's column-major storage makes vec a
// plain reinterpretation of the matrix data.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>

namespace kicked {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-12;

// --------------------------- Validated operator types -----------------------

class HermitianOperator {
public:
    // Throws ValidationError unless m is square, finite and Hermitian to
    // kHermitianTol entrywise. The stored matrix is (m + m†)/2.
    explicit HermitianOperator(const ComplexMatrix& m);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    Index dim() const noexcept { return m_.rows(); }

private:
    ComplexMatrix m_;
};

class DensityMatrix {
public:
    // Hermitian, unit trace, positive semidefinite (min eigenvalue >= -kPsdTol).
    // Re-symmetrized on construction.
    explicit DensityMatrix(const ComplexMatrix& m);

    static DensityMatrix maximally_mixed(Index d);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    Index dim() const noexcept { return m_.rows(); }
    double purity() const;

private:
    ComplexMatrix m_;
};

struct BlochVector {
    double x1{0.0};
    double x2{0.0};
    double x3{0.0};

    double norm() const;
};

// Linear map on d×d matrices acting on column-stacked vectors (d²×d²).
struct Superoperator {
    Index dim{0};
    ComplexMatrix matrix;

    static Superoperator identity(Index d);
    static Superoperator zero(Index d);
};

// --------------------------- Small helpers ----------------------------------

ComplexMatrix identity(Index d);
ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();

ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, Index d);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Largest singular value.
double operator_norm(const ComplexMatrix& m);

// ‖U†U − I‖ in operator norm.
double unitarity_defect(const ComplexMatrix& u);

// --------------------------- Bloch parametrization ---------------------------

BlochVector bloch_from_density(const DensityMatrix& rho);
DensityMatrix density_from_bloch(const BlochVector& x);

// --------------------------- Exponentials -----------------------------------

// e^{i s H} through the eigendecomposition of H.
ComplexMatrix expm_hermitian(const HermitianOperator& h, double s);

// e^{t M} by Padé scaling-and-squaring. Throws NumericError on overflow.
ComplexMatrix expm_general(const ComplexMatrix& m, double t);
Superoperator expm_general(const Superoperator& s, double t);

// --------------------------- Superoperators ---------------------------------

using LinearMap = std::function<ComplexMatrix(const ComplexMatrix&)>;

// Matrix of `map` in the column-stacking convention, built column by column
// from the images of the d² matrix units.
Superoperator vectorize(Index d, const LinearMap& map);

// ρ ↦ U ρ U†
Superoperator unitary_conjugation(const ComplexMatrix& u);

ComplexMatrix apply_map(const Superoperator& s, const ComplexMatrix& rho);
Superoperator compose(const Superoperator& a, const Superoperator& b); // a∘b

} // namespace kicked
