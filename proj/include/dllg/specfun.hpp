#ifndef DLLG_SPECFUN_HPP
#define DLLG_SPECFUN_HPP

#include <complex>

#include "dllg/errors.hpp"

namespace dllg::specfun {

using Complex = std::complex<double>;

// Parameters of the scale-q deformation.  q = 1 is treated as the exact
// classical limit everywhere (selected by exact comparison, never by
// evaluating the 1/(1-q) form near its singularity).
struct DeformationQ {
    double q = 1.0;
    Complex lambda{1.0, 0.0}; // scale factor; may be complex
    double q_prime = 1.0;     // auxiliary algebra index

    bool operator==(const DeformationQ&) const = default;
};

// Order pair (alpha, beta) of the two-parameter Mittag-Leffler function
// E_{alpha,beta}.  beta = 1 gives the one-parameter function E_alpha.
struct MLParams {
    double alpha = 1.0;
    double beta = 1.0;

    bool operator==(const MLParams&) const = default;
};

// Tuning knobs of the Mittag-Leffler series evaluation.
struct MlOptions {
    double eps_rel = 1e-12;
    double eps_abs = 1e-300;
    int k_max = 10000;
    double z_max = 50.0; // series-validity radius for |z|
};

// Mittag-Leffler value together with its achieved-accuracy estimate.
struct MlResult {
    Complex value;
    double accuracy = 0.0; // estimated absolute error bound
    int terms = 0;         // series terms consumed (0 for closed forms)
};

// q-exponential e_q(z) = [1 + (1-q) z]^(1/(1-q)) on the principal branch;
// exp(z) exactly at q = 1.
// Throws PoleError when 1 + (1-q) z = 0.
Complex q_exp(const DeformationQ& d, Complex z);

// Real-valued restriction of e_q.  Throws BranchCutError when the base
// 1 + (1-q) x is negative, PoleError when it vanishes.
double q_exp_real(const DeformationQ& d, double x);

// d/dz e_q(z) = [1 + (1-q) z]^(q/(1-q)).  Same branch and error behaviour
// as q_exp.
Complex q_exp_derivative(const DeformationQ& d, Complex z);

// q-trigonometric pair: cos_q(x) = Re e_q(ix), sin_q(x) = Im e_q(ix).
// Defined for every real x (|1 + (1-q) ix| >= 1, so no pole or cut).
double q_cos(const DeformationQ& d, double x);
double q_sin(const DeformationQ& d, double x);

// Squared envelope cos_q(x)^2 + sin_q(x)^2 = [1 + (1-q)^2 x^2]^(1/(1-q)).
double q_trig_envelope_sq(const DeformationQ& d, double x);

// Two-parameter Mittag-Leffler function E_{alpha,beta}(z), direct series
// with compensated accumulation.  The orders (1,1), (2,1) and (2,2) are
// evaluated through their exact elementary closed forms.
// Throws DomainError outside alpha > 0 or |z| > z_max, ConvergenceError if
// the stopping rule does not fire within k_max terms.
MlResult ml(const MLParams& p, Complex z, const MlOptions& opts = {});

// Euler gamma function, Lanczos approximation (g = 7, 9 terms) with the
// reflection formula below x = 0.5.  Throws PoleError at non-positive
// integers.
double gamma_fn(double x);

} // namespace dllg::specfun

#endif // DLLG_SPECFUN_HPP
