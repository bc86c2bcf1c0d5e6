#include "dllg/deformed_ops.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace dllg::deformed_ops {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPoleGuard = 1e-8;

Complex checked_eval(const Sampled1DFunction& f, double x) {
    const Complex v = f.eval(x);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw DomainError("function undefined (non-finite) at x=" + std::to_string(x));
    return v;
}

Complex derivative_of(const Sampled1DFunction& f, double x, double step) {
    if (f.analytic_derivative) {
        const Complex v = f.analytic_derivative(x);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw DomainError("analytic derivative non-finite at x=" + std::to_string(x));
        return v;
    }
    if (step == 0.0) step = default_step(x);
    if (!(step > 0.0)) throw DomainError("differentiation step must be positive");
    return central_derivative(f, x, step);
}

} // namespace

double default_step(double x) {
    // eps^(1/5) balances truncation (h^4) against round-off for the
    // 5-point stencil.
    static const double h0 = std::pow(kEps, 0.2);
    return h0 * std::max(1.0, std::abs(x));
}

Complex central_derivative(const Sampled1DFunction& f, double x, double step) {
    const Complex fm2 = checked_eval(f, x - 2.0 * step);
    const Complex fm1 = checked_eval(f, x - step);
    const Complex fp1 = checked_eval(f, x + step);
    const Complex fp2 = checked_eval(f, x + 2.0 * step);
    return (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * step);
}

Complex scale_q_derivative(const Sampled1DFunction& f, const DeformationQ& d,
                           double x, double step) {
    const Complex prefactor = 1.0 + (1.0 - d.q) * d.lambda * x;
    return prefactor * derivative_of(f, x, step);
}

Complex axiomatic_derivative(const Sampled1DFunction& f, double alpha,
                             double x, double step) {
    if (!(alpha > 0.0) || alpha > 1.2)
        throw DomainError("axiomatic_derivative: alpha must lie in (0, 1.2]");
    if (!(x > 0.0))
        throw DomainError("axiomatic_derivative: x must be positive");
    return std::pow(x, 1.0 - alpha) * derivative_of(f, x, step);
}

ResidualReport verify_q_eigenvalue(const DeformationQ& d,
                                   const std::vector<double>& grid) {
    if (grid.empty()) throw DomainError("verify_q_eigenvalue: empty grid");
    const bool real_lambda = (d.lambda.imag() == 0.0);
    for (double x : grid) {
        const Complex w = 1.0 + (1.0 - d.q) * d.lambda * x;
        if (std::abs(w) <= kPoleGuard)
            throw DomainError("verify_q_eigenvalue: grid point x=" + std::to_string(x) +
                              " within 1e-8 of the e_q pole");
        if (real_lambda && d.q != 1.0 && w.real() <= kPoleGuard)
            throw DomainError("verify_q_eigenvalue: grid point x=" + std::to_string(x) +
                              " on the branch cut of e_q");
    }

    const Complex lambda = d.lambda;
    Sampled1DFunction f{
        [d, lambda](double x) { return specfun::q_exp(d, lambda * x); },
        [d, lambda](double x) { return lambda * specfun::q_exp_derivative(d, lambda * x); },
    };

    ResidualReport rep;
    rep.grid = grid;
    rep.residuals.reserve(grid.size());
    for (double x : grid) {
        const Complex lhs = scale_q_derivative(f, d, x);
        const Complex rhs = lambda * f.eval(x);
        const double res = std::abs(lhs - rhs);
        rep.residuals.push_back(res);
        rep.max_residual = std::max(rep.max_residual, res);
    }
    std::ostringstream echo;
    echo << "q=" << d.q << " lambda=(" << lambda.real() << "," << lambda.imag()
         << ") q_prime=" << d.q_prime;
    rep.config_echo = echo.str();
    return rep;
}

namespace {

// sum_{k>=1} k u^(k-1) / Gamma(alpha k + 1); equals e^u at alpha = 1.
// Term-by-term derivative of the one-parameter Mittag-Leffler series.
double ml_series_derivative(double alpha, double u) {
    double sum = 0.0;
    double power = 1.0; // u^(k-1)
    int below = 0;
    for (int k = 1; k <= 10000; ++k) {
        const double g = alpha * k + 1.0;
        const double inv_gamma =
            g <= 170.0 ? 1.0 / std::tgamma(g) : std::exp(-std::lgamma(g));
        const double term = k * power * inv_gamma;
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum) + 1e-300) {
            if (++below >= 2) return sum;
        } else {
            below = 0;
        }
        power *= u;
    }
    throw ConvergenceError("ml_series_derivative: no convergence, u=" + std::to_string(u));
}

} // namespace

ResidualReport verify_alpha_eigenvalue(double alpha, double lambda,
                                       const std::vector<double>& grid) {
    if (grid.empty()) throw DomainError("verify_alpha_eigenvalue: empty grid");
    if (!(alpha > 0.0) || alpha > 1.0)
        throw DomainError("verify_alpha_eigenvalue: alpha must lie in (0, 1]");
    for (double x : grid)
        if (!(x > 0.0))
            throw DomainError("verify_alpha_eigenvalue: grid points must be positive");

    Sampled1DFunction f{
        [alpha, lambda](double x) {
            const double u = lambda * std::pow(x, alpha);
            return specfun::ml({alpha, 1.0}, Complex(u, 0.0)).value;
        },
        // d/dx E_a(l x^a) = a l x^(a-1) sum_{k>=1} k (l x^a)^(k-1) / Gamma(a k + 1)
        [alpha, lambda](double x) {
            const double u = lambda * std::pow(x, alpha);
            return Complex(alpha * lambda * std::pow(x, alpha - 1.0) *
                               ml_series_derivative(alpha, u),
                           0.0);
        },
    };

    ResidualReport rep;
    rep.grid = grid;
    rep.residuals.reserve(grid.size());
    double max_lf = 0.0;
    for (double x : grid) {
        const Complex lhs = axiomatic_derivative(f, alpha, x);
        const Complex rhs = lambda * f.eval(x);
        const double res = std::abs(lhs - rhs);
        rep.residuals.push_back(res);
        rep.max_residual = std::max(rep.max_residual, res);
        max_lf = std::max(max_lf, std::abs(rhs));
    }
    if (alpha != 1.0) rep.residual_ratio = rep.max_residual / std::abs(1.0 - alpha);
    if (max_lf > 0.0)
        rep.outside_low_fractionality =
            rep.max_residual / max_lf > kLowFractionalityRelThreshold;
    std::ostringstream echo;
    echo << "alpha=" << alpha << " lambda=" << lambda;
    rep.config_echo = echo.str();
    return rep;
}

} // namespace dllg::deformed_ops
