#ifndef DLLG_SPIN_ALGEBRA_HPP
#define DLLG_SPIN_ALGEBRA_HPP

#include <array>
#include <complex>

#include "dllg/specfun.hpp"

namespace dllg::spin_algebra {

using specfun::Complex;

// 2x2 complex matrix, row-major.  Represents deformed spin components and
// two-level evolution operators.  Hermiticity is a checkable predicate,
// not an invariant: the deformed propagators are deliberately non-Hermitian.
struct SpinOperator {
    std::array<Complex, 4> m{}; // [ m00 m01; m10 m11 ]

    static SpinOperator identity();
    static SpinOperator zero();

    Complex& operator()(int row, int col) { return m[row * 2 + col]; }
    const Complex& operator()(int row, int col) const { return m[row * 2 + col]; }

    SpinOperator adjoint() const;
    double frobenius_norm() const;
    bool is_hermitian(double tol = 1e-12) const;
};

SpinOperator operator+(const SpinOperator& a, const SpinOperator& b);
SpinOperator operator-(const SpinOperator& a, const SpinOperator& b);
SpinOperator operator*(const SpinOperator& a, const SpinOperator& b);
SpinOperator operator*(Complex s, const SpinOperator& a);

// Pauli matrices.
SpinOperator pauli_x();
SpinOperator pauli_y();
SpinOperator pauli_z();

// ab - ba.
SpinOperator commutator(const SpinOperator& a, const SpinOperator& b);

// Physical scale factors shared by both deformation families.
struct PhysicalScales {
    double hbar_scale = 1.0; // hbar-like action scale
    double m_q = 1.0;        // dimensional-regularization factor, q family
    double m_alpha = 1.0;    // dimensional-regularization factor, alpha family
    double g_factor = 1.0;
    double mu_b = 1.0;       // Bohr-magneton-like constant
    double gamma = 1.0;      // gyromagnetic factor in use (derived or set)

    bool operator==(const PhysicalScales&) const = default;
};

// gamma_q = [1 + lambda (1-q') x] g mu_B / (hbar M_q)
double gamma_q(const PhysicalScales& s, double q_prime, double lambda, double x);
// gamma_alpha = M_alpha Gamma(alpha+1) g mu_B / hbar^alpha
double gamma_alpha(const PhysicalScales& s, double alpha);

// Scalar multiplying i eps_ijk in the deformed angular-momentum algebra.
struct DeformationFactorKappa {
    double value = 1.0;
};

// kappa_q = [1 + lambda (1-q') x] hbar M_q
DeformationFactorKappa kappa_q(const PhysicalScales& s, double q_prime,
                               double lambda, double x);
// kappa_alpha = Gamma(alpha+1) hbar^alpha M_alpha
DeformationFactorKappa kappa_alpha(const PhysicalScales& s, double alpha);

struct AngularMomenta {
    SpinOperator lx, ly, lz;
};

// L_i = kappa sigma_i / 2; satisfies [L_i, L_j] = i kappa eps_ijk L_k.
AngularMomenta deformed_angular_momenta(DeformationFactorKappa kappa);

// Eigenvalues and spectral projectors of a Hermitian 2x2 matrix,
// h = mu1 p1 + mu2 p2 with p1 + p2 = I.
struct EigenSystem {
    double mu1 = 0.0, mu2 = 0.0;
    SpinOperator p1, p2;
};
EigenSystem hermitian_eigensystem(const SpinOperator& h);

// U_q(t) = e_q(-i H t / (hbar M_q)), applied spectrally.  Exact unitary
// propagator at q = 1; U(0) = I for every q.
SpinOperator evolution_operator_q(const SpinOperator& h, double t,
                                  const specfun::DeformationQ& d,
                                  const PhysicalScales& s);

// U_alpha(t) = E_alpha(-i H t^alpha / hbar^alpha), applied spectrally.
SpinOperator evolution_operator_alpha(const SpinOperator& h, double t,
                                      const specfun::MLParams& p,
                                      const PhysicalScales& s);

// || U^dag U - I ||_F, the departure from probability conservation.
double nonunitarity(const SpinOperator& u);

} // namespace dllg::spin_algebra

#endif // DLLG_SPIN_ALGEBRA_HPP
