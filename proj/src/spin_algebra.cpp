#include "dllg/spin_algebra.hpp"

#include <cmath>
#include <string>

namespace dllg::spin_algebra {

namespace {
const Complex kI(0.0, 1.0);
}

SpinOperator SpinOperator::identity() {
    SpinOperator u;
    u.m = {Complex(1.0), Complex(0.0), Complex(0.0), Complex(1.0)};
    return u;
}

SpinOperator SpinOperator::zero() { return {}; }

SpinOperator SpinOperator::adjoint() const {
    SpinOperator a;
    a.m = {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
    return a;
}

double SpinOperator::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& c : m) s += std::norm(c);
    return std::sqrt(s);
}

bool SpinOperator::is_hermitian(double tol) const {
    const double scale = std::max(1.0, frobenius_norm());
    return (*this - adjoint()).frobenius_norm() <= tol * scale;
}

SpinOperator operator+(const SpinOperator& a, const SpinOperator& b) {
    SpinOperator r;
    for (int i = 0; i < 4; ++i) r.m[i] = a.m[i] + b.m[i];
    return r;
}

SpinOperator operator-(const SpinOperator& a, const SpinOperator& b) {
    SpinOperator r;
    for (int i = 0; i < 4; ++i) r.m[i] = a.m[i] - b.m[i];
    return r;
}

SpinOperator operator*(const SpinOperator& a, const SpinOperator& b) {
    SpinOperator r;
    r.m[0] = a.m[0] * b.m[0] + a.m[1] * b.m[2];
    r.m[1] = a.m[0] * b.m[1] + a.m[1] * b.m[3];
    r.m[2] = a.m[2] * b.m[0] + a.m[3] * b.m[2];
    r.m[3] = a.m[2] * b.m[1] + a.m[3] * b.m[3];
    return r;
}

SpinOperator operator*(Complex s, const SpinOperator& a) {
    SpinOperator r;
    for (int i = 0; i < 4; ++i) r.m[i] = s * a.m[i];
    return r;
}

SpinOperator pauli_x() {
    SpinOperator p;
    p.m = {Complex(0.0), Complex(1.0), Complex(1.0), Complex(0.0)};
    return p;
}

SpinOperator pauli_y() {
    SpinOperator p;
    p.m = {Complex(0.0), -kI, kI, Complex(0.0)};
    return p;
}

SpinOperator pauli_z() {
    SpinOperator p;
    p.m = {Complex(1.0), Complex(0.0), Complex(0.0), Complex(-1.0)};
    return p;
}

SpinOperator commutator(const SpinOperator& a, const SpinOperator& b) {
    return a * b - b * a;
}

double gamma_q(const PhysicalScales& s, double q_prime, double lambda, double x) {
    return (1.0 + lambda * (1.0 - q_prime) * x) * s.g_factor * s.mu_b /
           (s.hbar_scale * s.m_q);
}

double gamma_alpha(const PhysicalScales& s, double alpha) {
    return s.m_alpha * specfun::gamma_fn(alpha + 1.0) * s.g_factor * s.mu_b /
           std::pow(s.hbar_scale, alpha);
}

DeformationFactorKappa kappa_q(const PhysicalScales& s, double q_prime,
                               double lambda, double x) {
    const double k = (1.0 + lambda * (1.0 - q_prime) * x) * s.hbar_scale * s.m_q;
    if (!(k > 0.0))
        throw DomainError("kappa_q: deformation factor must stay positive");
    return {k};
}

DeformationFactorKappa kappa_alpha(const PhysicalScales& s, double alpha) {
    const double k = specfun::gamma_fn(alpha + 1.0) *
                     std::pow(s.hbar_scale, alpha) * s.m_alpha;
    if (!(k > 0.0))
        throw DomainError("kappa_alpha: deformation factor must stay positive");
    return {k};
}

AngularMomenta deformed_angular_momenta(DeformationFactorKappa kappa) {
    if (!(kappa.value > 0.0))
        throw DomainError("deformed_angular_momenta: kappa must be positive");
    const Complex half(0.5 * kappa.value, 0.0);
    return {half * pauli_x(), half * pauli_y(), half * pauli_z()};
}

EigenSystem hermitian_eigensystem(const SpinOperator& h) {
    if (!h.is_hermitian())
        throw NumericalError("hermitian_eigensystem: matrix is not Hermitian");
    const double a = h.m[0].real();
    const double d = h.m[3].real();
    const Complex b = h.m[1];
    const double mean = 0.5 * (a + d);
    const double rad = std::hypot(0.5 * (a - d), std::abs(b));

    EigenSystem es;
    es.mu1 = mean - rad;
    es.mu2 = mean + rad;
    const double scale = std::max({1.0, std::abs(a), std::abs(d), std::abs(b)});
    if (rad <= 1e-15 * scale) {
        // Multiple of the identity: any basis diagonalizes it.
        es.p1 = SpinOperator::identity();
        es.p2 = SpinOperator::zero();
        es.mu2 = es.mu1;
        return es;
    }
    // Eigenvector of mu2, picking the better-conditioned column.
    Complex v0, v1;
    if (std::abs(es.mu2 - a) >= std::abs(es.mu2 - d)) {
        v0 = b;
        v1 = Complex(es.mu2 - a, 0.0);
    } else {
        v0 = Complex(es.mu2 - d, 0.0);
        v1 = std::conj(b);
    }
    const double n = std::sqrt(std::norm(v0) + std::norm(v1));
    if (!(n > 0.0) || !std::isfinite(n))
        throw NumericalError("hermitian_eigensystem: eigenvector breakdown");
    v0 /= n;
    v1 /= n;
    es.p2.m = {v0 * std::conj(v0), v0 * std::conj(v1),
               v1 * std::conj(v0), v1 * std::conj(v1)};
    es.p1 = SpinOperator::identity() - es.p2;
    return es;
}

namespace {

// f(H) = f(mu1) P1 + f(mu2) P2 for the scalar map f of the phase argument.
template <typename ScalarFn>
SpinOperator spectral_apply(const SpinOperator& h, ScalarFn&& f) {
    const EigenSystem es = hermitian_eigensystem(h);
    return f(es.mu1) * es.p1 + f(es.mu2) * es.p2;
}

} // namespace

SpinOperator evolution_operator_q(const SpinOperator& h, double t,
                                  const specfun::DeformationQ& d,
                                  const PhysicalScales& s) {
    if (t == 0.0) return SpinOperator::identity(); // e_q(0) = 1
    const double denom = s.hbar_scale * s.m_q;
    return spectral_apply(h, [&](double mu) {
        return specfun::q_exp(d, -kI * mu * t / denom);
    });
}

SpinOperator evolution_operator_alpha(const SpinOperator& h, double t,
                                      const specfun::MLParams& p,
                                      const PhysicalScales& s) {
    if (!(t >= 0.0))
        throw DomainError("evolution_operator_alpha: t must be non-negative");
    if (!(p.alpha > 0.0) || p.alpha > 1.2)
        throw DomainError("evolution_operator_alpha: alpha must lie in (0, 1.2]");
    if (t == 0.0) return SpinOperator::identity(); // E_alpha(0) = 1
    const double ta = std::pow(t, p.alpha);
    const double ha = std::pow(s.hbar_scale, p.alpha);
    return spectral_apply(h, [&](double mu) {
        return specfun::ml(p, -kI * mu * ta / ha).value;
    });
}

double nonunitarity(const SpinOperator& u) {
    return (u.adjoint() * u - SpinOperator::identity()).frobenius_norm();
}

} // namespace dllg::spin_algebra
