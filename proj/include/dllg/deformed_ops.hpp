#ifndef DLLG_DEFORMED_OPS_HPP
#define DLLG_DEFORMED_OPS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dllg/specfun.hpp"

namespace dllg::deformed_ops {

using specfun::Complex;
using specfun::DeformationQ;

// Scalar function of a real variable.  When analytic_derivative is absent,
// operators fall back to 5-point central differences with the module's
// step policy.
struct Sampled1DFunction {
    std::function<Complex(double)> eval;
    std::function<Complex(double)> analytic_derivative; // optional
};

// Pointwise eigenvalue-identity residuals |D f - lambda f| over a grid.
struct ResidualReport {
    std::vector<double> grid;
    std::vector<double> residuals;
    double max_residual = 0.0;
    std::string config_echo;
    // alpha family only: max_residual / |1 - alpha|
    std::optional<double> residual_ratio;
    bool outside_low_fractionality = false;
};

// Relative residual above which an alpha sweep is reported as outside the
// low-level-fractionality regime.
inline constexpr double kLowFractionalityRelThreshold = 0.25;

// Default differentiation step: eps^(1/5) * max(1, |x|).
double default_step(double x);

// 5-point central difference of f at x.
Complex central_derivative(const Sampled1DFunction& f, double x, double step);

// Scale-q derivative [1 + (1-q) lambda x] f'(x).  step = 0 selects the
// default policy; it is ignored when f carries an analytic derivative.
Complex scale_q_derivative(const Sampled1DFunction& f, const DeformationQ& d,
                           double x, double step = 0.0);

// Local conformable-type derivative x^(1-alpha) f'(x), x > 0,
// 0 < alpha <= 1.2.
Complex axiomatic_derivative(const Sampled1DFunction& f, double alpha,
                             double x, double step = 0.0);

// Residuals of D_q e_q(lambda x) - lambda e_q(lambda x) using the analytic
// derivative of e_q.  Exact analytically; the report measures float noise.
ResidualReport verify_q_eigenvalue(const DeformationQ& d,
                                   const std::vector<double>& grid);

// Residuals of x^(1-alpha) d/dx E_alpha(lambda x^alpha) - lambda E_alpha.
// Approximate for alpha < 1; the report carries max_residual/|1-alpha|.
ResidualReport verify_alpha_eigenvalue(double alpha, double lambda,
                                       const std::vector<double>& grid);

} // namespace dllg::deformed_ops

#endif // DLLG_DEFORMED_OPS_HPP
