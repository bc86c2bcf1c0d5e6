#include "dllg/llg.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

namespace dllg::llg {

namespace {

using specfun::Complex;
const Complex kI(0.0, 1.0);
constexpr double kAngleEps = 1e-14;
constexpr double kMaxPhaseStep = 0.5; // rad per RK4 step

void validate_q(const SimConfigQ& cfg) {
    if (cfg.n_steps < 2) throw ValidationError("n_steps must be >= 2");
    if (cfg.t_max < 0.0 || !std::isfinite(cfg.t_max))
        throw ValidationError("t_max must be positive (or 0 for the default)");
    if (cfg.field.h0 < 0.0) throw ValidationError("h0 must be non-negative");
    if (!std::isfinite(cfg.scales.gamma * cfg.field.h0))
        throw ValidationError("gamma*h0 must be finite");
}

void validate_alpha(const SimConfigAlpha& cfg) {
    if (cfg.n_steps < 2) throw ValidationError("n_steps must be >= 2");
    if (cfg.t_max < 0.0 || !std::isfinite(cfg.t_max))
        throw ValidationError("t_max must be positive (or 0 for the default)");
    if (!(cfg.alpha > 0.0) || cfg.alpha > 1.2)
        throw ValidationError("alpha must lie in (0, 1.2]");
    if (cfg.omega0 < 0.0) throw ValidationError("omega0 must be non-negative");
}

std::vector<double> uniform_grid(double t_max, int n_steps) {
    std::vector<double> t(n_steps + 1);
    const double h = t_max / n_steps;
    for (int i = 0; i <= n_steps; ++i) t[i] = h * i;
    t[n_steps] = t_max;
    return t;
}

Trajectory make_trajectory(std::vector<double> times) {
    Trajectory traj;
    traj.magnetizations.resize(times.size());
    traj.times = std::move(times);
    return traj;
}

} // namespace

double effective_t_max_q(const SimConfigQ& cfg) {
    if (cfg.t_max > 0.0) return cfg.t_max;
    const double omega = std::abs(cfg.scales.gamma * cfg.field.h0);
    const double period = omega > 0.0 ? 2.0 * std::numbers::pi / omega : 1.0;
    return 20.0 * period;
}

double effective_t_max_alpha(const SimConfigAlpha& cfg) {
    if (cfg.t_max > 0.0) return cfg.t_max;
    const double period = cfg.omega0 > 0.0 ? 2.0 * std::numbers::pi / cfg.omega0 : 1.0;
    return 20.0 * period;
}

Trajectory closed_form_q(const SimConfigQ& cfg) {
    validate_q(cfg);
    const double omega = cfg.scales.gamma * cfg.field.h0;
    const double t_max = effective_t_max_q(cfg);
    Trajectory traj = make_trajectory(uniform_grid(t_max, cfg.n_steps));

    const Complex phase0 = specfun::q_exp(cfg.deformation, kI * cfg.theta0);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const Complex m_minus =
            cfg.rho * phase0 *
            specfun::q_exp(cfg.deformation, -kI * omega * traj.times[i]);
        traj.magnetizations[i] = {m_minus.real(), 0.0 - m_minus.imag(), 0.0};
    }
    return diagnostics(traj, cfg.field);
}

Trajectory integrate_q_llg(const SimConfigQ& cfg) {
    validate_q(cfg);
    const double omega = cfg.scales.gamma * cfg.field.h0;
    const double t_max = effective_t_max_q(cfg);
    const double h = t_max / cfg.n_steps;
    const double q = cfg.deformation.q;

    // Prefactor of the time derivative, per lambda reading.
    double lambda_real = 0.0;
    if (cfg.lambda_mode == LambdaMode::ExplicitReal) {
        if (cfg.deformation.lambda.imag() != 0.0)
            throw ValidationError("ExplicitReal mode requires a real lambda");
        lambda_real = cfg.deformation.lambda.real();
        if (q != 1.0 && lambda_real != 0.0) {
            const double t_pole = -1.0 / ((1.0 - q) * lambda_real);
            if (t_pole >= 0.0 && t_pole <= t_max)
                throw PoleError("integrate_q_llg: prefactor vanishes at t=" +
                                std::to_string(t_pole) + " inside the window");
        }
        // 1 + (1-q) lambda t is monotone in t: bound it by the endpoints.
        const double p0 = 1.0;
        const double p1 = std::abs(1.0 + (1.0 - q) * lambda_real * t_max);
        const double min_pref = std::min(p0, p1);
        if (std::abs(omega) * h / min_pref > kMaxPhaseStep)
            throw StepError("integrate_q_llg: phase step exceeds 0.5 rad; increase n_steps");
    } else {
        if (std::abs(omega) * h > kMaxPhaseStep)
            throw StepError("integrate_q_llg: phase step exceeds 0.5 rad; increase n_steps");
    }

    Trajectory traj = make_trajectory(uniform_grid(t_max, cfg.n_steps));
    const Complex m0 = cfg.rho * specfun::q_exp(cfg.deformation, kI * cfg.theta0);

    if (cfg.lambda_mode == LambdaMode::EigenvalueMatched) {
        // Complex scalar ODE for m- = m_x - i m_y:
        //   [1 + (1-q)(-i w) t] dm-/dt = -i w m-
        const auto rhs = [&](double t, Complex m) {
            const Complex w = 1.0 + (1.0 - q) * (-kI * omega) * t;
            return -kI * omega * m / w;
        };
        Complex m = m0;
        traj.magnetizations[0] = {m.real(), 0.0 - m.imag(), 0.0};
        for (int i = 0; i < cfg.n_steps; ++i) {
            const double t = traj.times[i];
            const Complex k1 = rhs(t, m);
            const Complex k2 = rhs(t + 0.5 * h, m + 0.5 * h * k1);
            const Complex k3 = rhs(t + 0.5 * h, m + 0.5 * h * k2);
            const Complex k4 = rhs(t + h, m + h * k3);
            m += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            traj.magnetizations[i + 1] = {m.real(), 0.0 - m.imag(), 0.0};
        }
    } else {
        // Real three-vector ODE [1 + (1-q) lambda t] dm/dt = -gamma m x H.
        struct V3 {
            double x, y, z;
        };
        const auto rhs = [&](double t, V3 m) {
            const double pref = 1.0 + (1.0 - q) * lambda_real * t;
            const double c = -omega / pref;
            return V3{c * m.y, -c * m.x, 0.0};
        };
        V3 m{m0.real(), 0.0 - m0.imag(), 0.0};
        traj.magnetizations[0] = {m.x, m.y, m.z};
        for (int i = 0; i < cfg.n_steps; ++i) {
            const double t = traj.times[i];
            const V3 k1 = rhs(t, m);
            const V3 k2 = rhs(t + 0.5 * h, {m.x + 0.5 * h * k1.x, m.y + 0.5 * h * k1.y, 0.0});
            const V3 k3 = rhs(t + 0.5 * h, {m.x + 0.5 * h * k2.x, m.y + 0.5 * h * k2.y, 0.0});
            const V3 k4 = rhs(t + h, {m.x + h * k3.x, m.y + h * k3.y, 0.0});
            m.x += (h / 6.0) * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
            m.y += (h / 6.0) * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
            traj.magnetizations[i + 1] = {m.x, m.y, m.z};
        }
    }
    return diagnostics(traj, cfg.field);
}

specfun::MlOptions alpha_ml_options(double eps_rel) {
    specfun::MlOptions o;
    o.eps_rel = eps_rel;
    // The alpha closed form reaches far beyond the conservative default
    // radius; the orders 2*alpha > 1 keep the series conditioned there and
    // the accuracy estimate stays honest about cancellation.
    o.z_max = 1e9;
    return o;
}

double alpha_cosine(double alpha, double omega0, double t,
                    const specfun::MlOptions& opts) {
    const double ta = std::pow(t, alpha);
    const double z = -(omega0 * ta) * (omega0 * ta);
    return specfun::ml({2.0 * alpha, 1.0}, Complex(z, 0.0), opts).value.real();
}

double alpha_sine(double alpha, double omega0, double t,
                  const specfun::MlOptions& opts) {
    const double ta = std::pow(t, alpha);
    const double z = -(omega0 * ta) * (omega0 * ta);
    return omega0 * ta *
           specfun::ml({2.0 * alpha, 1.0 + alpha}, Complex(z, 0.0), opts).value.real();
}

double alpha_cosine(double alpha, double omega0, double t) {
    return alpha_cosine(alpha, omega0, t, alpha_ml_options());
}

double alpha_sine(double alpha, double omega0, double t) {
    return alpha_sine(alpha, omega0, t, alpha_ml_options());
}

Trajectory closed_form_alpha(const SimConfigAlpha& cfg,
                             const specfun::MlOptions& opts) {
    validate_alpha(cfg);
    const double t_max = effective_t_max_alpha(cfg);
    Trajectory traj = make_trajectory(uniform_grid(t_max, cfg.n_steps));

    const double c0 = std::cos(cfg.theta0);
    const double s0 = std::sin(cfg.theta0);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double c = alpha_cosine(cfg.alpha, cfg.omega0, traj.times[i], opts);
        const double s = alpha_sine(cfg.alpha, cfg.omega0, traj.times[i], opts);
        traj.magnetizations[i] = {cfg.amplitude * (c0 * c + s0 * s),
                                  cfg.amplitude * (c0 * s - s0 * c), 0.0};
    }
    return diagnostics(traj, FieldConfig{});
}

Trajectory closed_form_alpha(const SimConfigAlpha& cfg) {
    return closed_form_alpha(cfg, alpha_ml_options());
}

Trajectory integrate_caputo_oscillator(double alpha, double omega0, double x0,
                                       int n_steps, double t_max) {
    if (!(alpha > 0.5) || alpha > 1.0)
        throw DomainError("integrate_caputo_oscillator: alpha must lie in (0.5, 1]");
    if (n_steps < 1000)
        throw DomainError("integrate_caputo_oscillator: n_steps must be >= 1000");
    if (!(t_max > 0.0))
        throw DomainError("integrate_caputo_oscillator: t_max must be positive");

    const double mu = 2.0 * alpha;
    const double h = t_max / n_steps;
    const double hm = std::pow(h, mu);
    const double c = hm * omega0 * omega0;
    if (c >= 1.0)
        throw StepError("integrate_caputo_oscillator: h^(2 alpha) omega0^2 >= 1; refine the grid");

    // Grunwald-Letnikov weights w_j = (-1)^j binom(mu, j).
    std::vector<double> w(n_steps + 1);
    w[0] = 1.0;
    for (int j = 1; j <= n_steps; ++j)
        w[j] = w[j - 1] * ((j - 1.0 - mu) / j);

    // y = x - x0 absorbs the initial value; x'(0) = 0 needs no extra term.
    std::vector<double> y(n_steps + 1, 0.0);
    for (int n = 1; n <= n_steps; ++n) {
        double conv = 0.0;
        const double* wp = w.data() + 1;
        const double* yp = y.data() + n - 1;
        for (int j = 1; j <= n; ++j) conv += wp[j - 1] * yp[-(j - 1)];
        y[n] = -conv - c * (y[n - 1] + x0);
    }

    Trajectory traj = make_trajectory(uniform_grid(t_max, n_steps));
    for (int n = 0; n <= n_steps; ++n)
        traj.magnetizations[n] = {y[n] + x0, 0.0, 0.0};
    return diagnostics(traj, FieldConfig{});
}

double envelope_q(const specfun::DeformationQ& d, double omega, double t) {
    if (d.q == 1.0) return 1.0;
    const double omq = 1.0 - d.q;
    return std::pow(1.0 + omq * omq * omega * omega * t * t, 0.5 / omq);
}

Trajectory& diagnostics(Trajectory& traj, const FieldConfig&) {
    if (traj.times.empty())
        throw DomainError("diagnostics: empty trajectory");
    const std::size_t n = traj.times.size();
    traj.modulus.resize(n);
    traj.angle_to_field.resize(n);
    traj.angle_undefined.clear();
    for (std::size_t i = 0; i < n; ++i) {
        const Magnetization& m = traj.magnetizations[i];
        const double mod = std::sqrt(m.mx * m.mx + m.my * m.my + m.mz * m.mz);
        traj.modulus[i] = mod;
        if (mod < kAngleEps) {
            traj.angle_to_field[i] = std::numeric_limits<double>::quiet_NaN();
            traj.angle_undefined.push_back(i);
        } else {
            // Field axis is fixed to +z.
            const double c = std::clamp(m.mz / mod, -1.0, 1.0);
            traj.angle_to_field[i] = std::acos(c);
        }
    }
    return traj;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
    os << "t,mx,my,mz,modulus,angle_rad\n";
    char buf[160];
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const Magnetization& m = traj.magnetizations[i];
        std::snprintf(buf, sizeof buf,
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", traj.times[i],
                      m.mx, m.my, m.mz, traj.modulus[i], traj.angle_to_field[i]);
        os << buf;
    }
}

} // namespace dllg::llg
