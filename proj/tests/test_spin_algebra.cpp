#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>

#include "dllg/spin_algebra.hpp"

using namespace dllg;
using spin_algebra::Complex;
using spin_algebra::SpinOperator;

namespace {

// Independent 2x2 product for the commutator oracle.
std::array<Complex, 4> mul_raw(const std::array<Complex, 4>& a,
                               const std::array<Complex, 4>& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

double max_abs_diff(const SpinOperator& a, const SpinOperator& b) {
    double m = 0.0;
    for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(a.m[i] - b.m[i]));
    return m;
}

// exp(-i H t) for H = hx sx + hy sy + hz sz (traceless Hermitian):
// cos(|h| t) I - i sin(|h| t) (h.sigma)/|h|
SpinOperator exp_pauli_oracle(double hx, double hy, double hz, double t) {
    const double n = std::sqrt(hx * hx + hy * hy + hz * hz);
    const Complex c(std::cos(n * t), 0.0);
    const Complex s(0.0, -std::sin(n * t) / n);
    SpinOperator u = c * SpinOperator::identity() +
                     s * (Complex(hx, 0.0) * spin_algebra::pauli_x() +
                          Complex(hy, 0.0) * spin_algebra::pauli_y() +
                          Complex(hz, 0.0) * spin_algebra::pauli_z());
    return u;
}

} // namespace

TEST_CASE("Pauli commutators") {
    const Complex i(0.0, 1.0);
    const SpinOperator sx = spin_algebra::pauli_x();
    const SpinOperator sy = spin_algebra::pauli_y();
    const SpinOperator sz = spin_algebra::pauli_z();

    // [sx/2, sy/2] = i sz/2
    const SpinOperator lhs = spin_algebra::commutator(Complex(0.5, 0.0) * sx,
                                                      Complex(0.5, 0.0) * sy);
    CHECK(max_abs_diff(lhs, (0.5 * i) * sz) == 0.0);
    // [A, A] = 0
    CHECK(spin_algebra::commutator(sx, sx).frobenius_norm() == 0.0);
    // [sz, sx] = 2 i sy
    CHECK(max_abs_diff(spin_algebra::commutator(sz, sx), (2.0 * i) * sy) == 0.0);
}

TEST_CASE("kappa factories") {
    const spin_algebra::PhysicalScales s;
    // [1 + 0.1*(1-0.8)*2] * 1 * 1 = 1.04
    CHECK(spin_algebra::kappa_q(s, 0.8, 0.1, 2.0).value ==
          doctest::Approx(1.04).epsilon(1e-15));
    // Gamma(2) = 1
    CHECK(spin_algebra::kappa_alpha(s, 1.0).value == doctest::Approx(1.0).epsilon(1e-14));

    spin_algebra::PhysicalScales s2;
    s2.hbar_scale = 2.0;
    s2.m_alpha = 3.0;
    CHECK(spin_algebra::kappa_alpha(s2, 0.5).value ==
          doctest::Approx(std::tgamma(1.5) * std::sqrt(2.0) * 3.0).epsilon(1e-13));
}

TEST_CASE("gyromagnetic factors") {
    spin_algebra::PhysicalScales s;
    s.hbar_scale = 2.0;
    s.m_q = 3.0;
    s.g_factor = 1.5;
    s.mu_b = 0.8;
    CHECK(spin_algebra::gamma_q(s, 0.9, 0.2, 1.0) ==
          doctest::Approx(1.02 * 1.5 * 0.8 / 6.0).epsilon(1e-14));
    spin_algebra::PhysicalScales s3;
    s3.hbar_scale = 4.0;
    s3.m_alpha = 2.0;
    CHECK(spin_algebra::gamma_alpha(s3, 0.5) ==
          doctest::Approx(2.0 * std::tgamma(1.5) / 2.0).epsilon(1e-13));
}

TEST_CASE("deformed angular momenta close the algebra") {
    const spin_algebra::PhysicalScales s;
    const double kappas[] = {1.0, spin_algebra::kappa_q(s, 0.8, 0.1, 2.0).value,
                             spin_algebra::kappa_alpha(s, 0.8).value};
    for (double kappa : kappas) {
        const auto l = spin_algebra::deformed_angular_momenta({kappa});
        const SpinOperator* ops[3] = {&l.lx, &l.ly, &l.lz};
        const int third[3] = {2, 0, 1}; // (x,y)->z, (y,z)->x, (z,x)->y
        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3;
            // independent product oracle
            const auto ab = mul_raw(ops[i]->m, ops[j]->m);
            const auto ba = mul_raw(ops[j]->m, ops[i]->m);
            double worst = 0.0;
            for (int e = 0; e < 4; ++e) {
                const Complex want = Complex(0.0, kappa) * ops[third[i]]->m[e];
                worst = std::max(worst, std::abs((ab[e] - ba[e]) - want));
            }
            CHECK(worst <= 1e-14 * kappa * kappa);
        }
    }
}

TEST_CASE("hermitian eigensystem reconstructs the matrix") {
    SpinOperator h;
    h.m = {Complex(0.3, 0.0), Complex(1.0, -0.4), Complex(1.0, 0.4), Complex(-0.7, 0.0)};
    const auto es = spin_algebra::hermitian_eigensystem(h);
    const SpinOperator rebuilt = Complex(es.mu1, 0.0) * es.p1 + Complex(es.mu2, 0.0) * es.p2;
    CHECK(max_abs_diff(rebuilt, h) < 1e-14);
    // projectors: idempotent, orthogonal, complete
    CHECK(max_abs_diff(es.p1 * es.p1, es.p1) < 1e-15);
    CHECK((es.p1 * es.p2).frobenius_norm() < 1e-15);
    CHECK(max_abs_diff(es.p1 + es.p2, SpinOperator::identity()) < 1e-15);

    SpinOperator bad;
    bad.m = {Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0)};
    CHECK_THROWS_AS(spin_algebra::hermitian_eigensystem(bad), NumericalError);
}

TEST_CASE("q evolution operator") {
    const spin_algebra::PhysicalScales s;
    const SpinOperator sz = spin_algebra::pauli_z();

    // classical limit: diag(e^{-it}, e^{+it})
    const specfun::DeformationQ q1{1.0, {1.0, 0.0}, 1.0};
    const SpinOperator u = spin_algebra::evolution_operator_q(sz, 0.7, q1, s);
    CHECK(std::abs(u.m[0] - std::exp(Complex(0.0, -0.7))) < 1e-14);
    CHECK(std::abs(u.m[3] - std::exp(Complex(0.0, 0.7))) < 1e-14);
    CHECK(std::abs(u.m[1]) < 1e-15);
    CHECK(spin_algebra::nonunitarity(u) < 1e-13);

    // t = 0 gives the exact identity for any deformation
    for (double q : {0.8, 1.0, 1.2}) {
        const SpinOperator u0 =
            spin_algebra::evolution_operator_q(sz, 0.0, {q, {1.0, 0.0}, 1.0}, s);
        CHECK(max_abs_diff(u0, SpinOperator::identity()) == 0.0);
    }

    // deformed entries match the scalar q-exponential on the eigenbasis
    const specfun::DeformationQ q12{1.2, {1.0, 0.0}, 1.0};
    const SpinOperator ud = spin_algebra::evolution_operator_q(sz, 1.0, q12, s);
    CHECK(std::abs(ud.m[0] - specfun::q_exp(q12, Complex(0.0, -1.0))) < 1e-15);
    CHECK(std::abs(ud.m[3] - specfun::q_exp(q12, Complex(0.0, 1.0))) < 1e-15);
    CHECK(spin_algebra::nonunitarity(ud) > 0.0);

    // non-diagonal Hermitian generator, classical limit vs Rodrigues oracle
    const SpinOperator h = Complex(1.0, 0.0) * spin_algebra::pauli_x() +
                           Complex(0.3, 0.0) * spin_algebra::pauli_z();
    const SpinOperator uc = spin_algebra::evolution_operator_q(h, 1.3, q1, s);
    CHECK(max_abs_diff(uc, exp_pauli_oracle(1.0, 0.0, 0.3, 1.3)) < 1e-13);
    CHECK(spin_algebra::nonunitarity(uc) < 1e-13);
}

TEST_CASE("alpha evolution operator") {
    const spin_algebra::PhysicalScales s;
    const SpinOperator sz = spin_algebra::pauli_z();

    const SpinOperator u1 = spin_algebra::evolution_operator_alpha(sz, 1.3, {1.0, 1.0}, s);
    CHECK(max_abs_diff(u1, exp_pauli_oracle(0.0, 0.0, 1.0, 1.3)) < 1e-13);
    CHECK(spin_algebra::nonunitarity(u1) < 1e-13);

    const SpinOperator u0 = spin_algebra::evolution_operator_alpha(sz, 0.0, {0.9, 1.0}, s);
    CHECK(max_abs_diff(u0, SpinOperator::identity()) == 0.0);

    const SpinOperator ua = spin_algebra::evolution_operator_alpha(sz, 2.0, {0.95, 1.0}, s);
    const double t_a = std::pow(2.0, 0.95);
    CHECK(std::abs(ua.m[0] - specfun::ml({0.95, 1.0}, Complex(0.0, -t_a)).value) < 1e-15);
    CHECK(std::abs(ua.m[3] - specfun::ml({0.95, 1.0}, Complex(0.0, t_a)).value) < 1e-15);

    CHECK_THROWS_AS(spin_algebra::evolution_operator_alpha(sz, -1.0, {0.9, 1.0}, s),
                    DomainError);
    CHECK_THROWS_AS(spin_algebra::evolution_operator_alpha(sz, 1.0, {1.5, 1.0}, s),
                    DomainError);
}

TEST_CASE("nonunitarity diagnostic") {
    // ||(2I)^dag (2I) - I||_F = ||3I||_F = 3 sqrt(2)
    const SpinOperator two_i = Complex(2.0, 0.0) * SpinOperator::identity();
    CHECK(spin_algebra::nonunitarity(two_i) ==
          doctest::Approx(4.24264068711928514640506617263).epsilon(1e-14));

    // strictly increasing departure with the deformation strength
    const spin_algebra::PhysicalScales s;
    const SpinOperator sz = spin_algebra::pauli_z();
    double prev = 0.0;
    for (double q : {1.05, 1.1, 1.2}) {
        const double nu = spin_algebra::nonunitarity(
            spin_algebra::evolution_operator_q(sz, 1.0, {q, {1.0, 0.0}, 1.0}, s));
        CHECK(nu > prev);
        prev = nu;
    }
}
