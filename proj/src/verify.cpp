#include "dllg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <vector>

#include "dllg/deformed_ops.hpp"
#include "dllg/llg.hpp"
#include "dllg/specfun.hpp"
#include "dllg/spin_algebra.hpp"

namespace dllg::verify {

namespace {

using specfun::Complex;
using spin_algebra::SpinOperator;

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

void add(VerificationReport& rep, const std::string& name, double measured,
         double bound, bool pass, const std::string& echo) {
    rep.checks.push_back({name, pass, measured, bound, echo});
}

void add_le(VerificationReport& rep, const std::string& name, double measured,
            double bound, const std::string& echo) {
    add(rep, name, measured, bound, measured <= bound, echo);
}

// --- criterion 1: classical reduction of the q family --------------------

void c01_classical_q(VerificationReport& rep) {
    llg::SimConfigQ cfg;
    cfg.deformation.q = 1.0;
    cfg.t_max = 20.0; // 20 / (gamma H0)
    cfg.n_steps = 10000;
    const llg::Trajectory traj = llg::integrate_q_llg(cfg);
    double err = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        err = std::max(err, std::abs(traj.magnetizations[i].mx - std::cos(traj.times[i])));
    add_le(rep, "c01.classical_reduction_q", err, 1e-8,
           "q=1 rho=1 gammaH0=1 theta0=0 n_steps=10000 t_max=20");
}

// --- criterion 2: classical reduction of the alpha family ----------------

void c02_classical_alpha(VerificationReport& rep) {
    llg::SimConfigAlpha cfg;
    cfg.alpha = 1.0;
    cfg.n_steps = 2000;
    const llg::Trajectory traj = llg::closed_form_alpha(cfg);
    double err = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        err = std::max(err, std::abs(traj.magnetizations[i].mx - std::cos(traj.times[i])));
    add_le(rep, "c02.classical_reduction_alpha", err, 1e-12,
           "alpha=1 A=1 omega0=1 theta0=0 over 20 periods");
}

// --- criterion 3: q eigenvalue identity ----------------------------------

void c03_q_eigenvalue(VerificationReport& rep) {
    const double qs[] = {0.5, 0.9, 1.1, 1.5};
    for (double q : qs) {
        // Real lambda: stay clear of the pole of e_q at x = 1/((q-1) lambda).
        specfun::DeformationQ d{q, Complex(1.0, 0.0), 1.0};
        const double x_hi = (q > 1.0) ? 0.9 / (q - 1.0) : 5.0;
        auto repq = deformed_ops::verify_q_eigenvalue(d, linspace(0.0, std::min(x_hi, 5.0), 51));
        char name[64];
        std::snprintf(name, sizeof name, "c03.q%.1f_real_lambda", q);
        add_le(rep, name, repq.max_residual, 1e-10, repq.config_echo);

        d.lambda = Complex(0.0, 1.0);
        repq = deformed_ops::verify_q_eigenvalue(d, linspace(0.0, 20.0, 51));
        std::snprintf(name, sizeof name, "c03.q%.1f_imag_lambda", q);
        add_le(rep, name, repq.max_residual, 1e-10, repq.config_echo);
    }
}

// --- criterion 4: low-level fractionality --------------------------------

void c04_alpha_eigenvalue(VerificationReport& rep) {
    const auto grid = linspace(0.5, 5.0, 46);
    const double alphas[] = {0.99, 0.98, 0.95};
    double rmin = 1e300, rmax = 0.0;
    for (double a : alphas) {
        const auto r = deformed_ops::verify_alpha_eigenvalue(a, 1.0, grid);
        rmin = std::min(rmin, *r.residual_ratio);
        rmax = std::max(rmax, *r.residual_ratio);
    }
    // Measured on this grid the ratio sits near 250; see the sweep tests.
    add_le(rep, "c04.ratio_bounded", rmax, 400.0,
           "max of max_residual/|1-alpha| over alpha in {0.99,0.98,0.95}, x in [0.5,5]");
    add_le(rep, "c04.ratio_roughly_constant", rmax / rmin, 1.25,
           "spread of the ratio across alpha in {0.99,0.98,0.95}");

    const auto r095 = deformed_ops::verify_alpha_eigenvalue(0.95, 1.0, grid);
    const auto r07 = deformed_ops::verify_alpha_eigenvalue(0.7, 1.0, grid);
    // Normalize the residuals by the eigenfunction scale max |lambda f|.
    double lf095 = 0.0, lf07 = 0.0;
    for (double x : grid) {
        lf095 = std::max(lf095, std::abs(specfun::ml({0.95, 1.0}, Complex(std::pow(x, 0.95), 0.0)).value));
        lf07 = std::max(lf07, std::abs(specfun::ml({0.7, 1.0}, Complex(std::pow(x, 0.7), 0.0)).value));
    }
    const double rel095 = r095.max_residual / lf095;
    const double rel07 = r07.max_residual / lf07;
    add_le(rep, "c04.in_regime_alpha0.95", rel095, 0.15,
           "relative residual at alpha=0.95");
    add(rep, "c04.violated_alpha0.7", rel07, 0.3, rel07 >= 0.3,
        "relative residual at alpha=0.7 must exceed 0.3");
    add(rep, "c04.flag_outside_regime", r07.outside_low_fractionality ? 1.0 : 0.0, 1.0,
        r07.outside_low_fractionality && !r095.outside_low_fractionality,
        "outside-regime flag set at 0.7, clear at 0.95");
}

// --- criterion 5: Fig. 1 dichotomy and envelope law -----------------------

void c05_fig1(VerificationReport& rep) {
    for (double q : {0.7, 1.5}) {
        llg::SimConfigQ cfg;
        cfg.deformation.q = q;
        cfg.n_steps = 2000; // default t_max: 20 periods
        const llg::Trajectory traj = llg::closed_form_q(cfg);
        const double final_mod = traj.modulus.back();
        char name[64];
        std::snprintf(name, sizeof name, "c05.final_modulus_q%.1f", q);
        if (q < 1.0)
            add(rep, name, final_mod, 1.0, final_mod > 1.0,
                "in-plane modulus at 20 periods must exceed rho=1");
        else
            add(rep, name, final_mod, 1.0, final_mod < 1.0,
                "in-plane modulus at 20 periods must stay below rho=1");

        double rel = 0.0;
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            const double env = llg::envelope_q(cfg.deformation, 1.0, traj.times[i]);
            rel = std::max(rel, std::abs(traj.modulus[i] - env) / env);
        }
        std::snprintf(name, sizeof name, "c05.envelope_match_q%.1f", q);
        add_le(rep, name, rel, 1e-12, "modulus vs envelope, relative");
    }
}

// --- criterion 6: Fig. 2 dichotomy ----------------------------------------

std::vector<double> extrema_magnitudes(const llg::Trajectory& traj) {
    std::vector<double> out;
    const auto& m = traj.magnetizations;
    for (std::size_t i = 1; i + 1 < m.size(); ++i) {
        const double d1 = m[i].mx - m[i - 1].mx;
        const double d2 = m[i + 1].mx - m[i].mx;
        if (d1 * d2 < 0.0) out.push_back(std::abs(m[i].mx));
    }
    return out;
}

void c06_fig2(VerificationReport& rep) {
    for (double alpha : {0.9, 1.05}) {
        llg::SimConfigAlpha cfg;
        cfg.alpha = alpha;
        cfg.t_max = 20.0;
        cfg.n_steps = 4000;
        const auto ext = extrema_magnitudes(llg::closed_form_alpha(cfg));
        char name[64], echo[128];
        std::snprintf(name, sizeof name, "c06.extrema_alpha%.2f", alpha);
        std::snprintf(echo, sizeof echo,
                      "%zu extrema over t in [0,20], omega0=1; successive amplitudes must %s",
                      ext.size(), alpha < 1.0 ? "decrease" : "increase");
        if (ext.size() < 4) {
            add(rep, name, static_cast<double>(ext.size()), 4.0, false, echo);
            continue;
        }
        double worst = alpha < 1.0 ? 0.0 : 1e300;
        bool ok = true;
        for (std::size_t i = 1; i < ext.size(); ++i) {
            const double ratio = ext[i] / ext[i - 1];
            if (alpha < 1.0) {
                worst = std::max(worst, ratio);
                ok = ok && ratio < 1.0;
            } else {
                worst = std::min(worst, ratio);
                ok = ok && ratio > 1.0;
            }
        }
        add(rep, name, worst, 1.0, ok, echo);
    }
}

// --- criterion 7: closed form vs Grunwald-Letnikov oracle ----------------

void c07_cross_oracle(VerificationReport& rep) {
    for (double alpha : {0.95, 0.9}) {
        const int n = 100000;
        const llg::Trajectory gl = llg::integrate_caputo_oscillator(alpha, 1.0, 1.0, n, 20.0);
        double err = 0.0;
        for (std::size_t i = 0; i < gl.times.size(); i += 50) {
            const double ref = llg::alpha_cosine(alpha, 1.0, gl.times[i]);
            err = std::max(err, std::abs(gl.magnetizations[i].mx - ref));
        }
        char name[64];
        std::snprintf(name, sizeof name, "c07.gl_vs_ml_alpha%.2f", alpha);
        add_le(rep, name, err, 1e-3, "omega0=1 x0=1 t in [0,20], 1e5 oracle steps");
    }
}

// --- criterion 8: deformed angular-momentum algebra ----------------------

double closure_violation(double kappa_value) {
    const auto l = spin_algebra::deformed_angular_momenta({kappa_value});
    const Complex ik(0.0, kappa_value);
    const SpinOperator* ops[3] = {&l.lx, &l.ly, &l.lz};
    // eps_ijk pattern over ordered pairs
    const int third[3][3] = {{-1, 2, 1}, {2, -1, 0}, {1, 0, -1}};
    const double sign[3][3] = {{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            SpinOperator expected = SpinOperator::zero();
            if (i != j) expected = (sign[i][j] * ik) * (*ops[third[i][j]]);
            const double v =
                (spin_algebra::commutator(*ops[i], *ops[j]) - expected).frobenius_norm();
            worst = std::max(worst, v);
        }
    return worst / (kappa_value * kappa_value);
}

void c08_algebra(VerificationReport& rep) {
    const spin_algebra::PhysicalScales s;
    const double kq = spin_algebra::kappa_q(s, 0.8, 0.1, 2.0).value;
    const double ka = spin_algebra::kappa_alpha(s, 0.8).value;
    add_le(rep, "c08.closure_kappa_q", closure_violation(kq), 1e-14,
           "kappa_q(q'=0.8, lambda=0.1, x=2) = " + std::to_string(kq));
    add_le(rep, "c08.closure_kappa_alpha", closure_violation(ka), 1e-14,
           "kappa_alpha(alpha=0.8) = " + std::to_string(ka));
    add_le(rep, "c08.closure_kappa_unit", closure_violation(1.0), 1e-14, "kappa = 1");
}

// --- criterion 9: evolution operators -------------------------------------

void c09_evolution(VerificationReport& rep) {
    const spin_algebra::PhysicalScales s;
    const SpinOperator h = spin_algebra::pauli_z();

    const SpinOperator uq0 = spin_algebra::evolution_operator_q(h, 0.0, {1.2, Complex(1.0, 0.0), 1.0}, s);
    const SpinOperator ua0 = spin_algebra::evolution_operator_alpha(h, 0.0, {0.9, 1.0}, s);
    const double dev0 = std::max((uq0 - SpinOperator::identity()).frobenius_norm(),
                                 (ua0 - SpinOperator::identity()).frobenius_norm());
    add(rep, "c09.identity_at_t0", dev0, 0.0, dev0 == 0.0, "U(0) = I exactly, both families");

    const double nu_q1 = spin_algebra::nonunitarity(
        spin_algebra::evolution_operator_q(h, 1.0, {1.0, Complex(1.0, 0.0), 1.0}, s));
    add_le(rep, "c09.unitary_at_q1", nu_q1, 1e-13, "H=sigma_z t=1");
    const double nu_a1 = spin_algebra::nonunitarity(
        spin_algebra::evolution_operator_alpha(h, 1.0, {1.0, 1.0}, s));
    add_le(rep, "c09.unitary_at_alpha1", nu_a1, 1e-13, "H=sigma_z t=1");

    double prev = 0.0;
    bool increasing = true;
    for (double q : {1.05, 1.1, 1.2}) {
        const double nu = spin_algebra::nonunitarity(
            spin_algebra::evolution_operator_q(h, 1.0, {q, Complex(1.0, 0.0), 1.0}, s));
        increasing = increasing && nu > prev;
        prev = nu;
    }
    add(rep, "c09.nonunitarity_increasing", prev, 0.0, increasing && prev > 0.0,
        "strictly increasing over q in {1.05, 1.1, 1.2} at t=1, H=sigma_z");
}

// --- criterion 10: RK4 convergence order ----------------------------------

double matched_error(int n_steps) {
    llg::SimConfigQ cfg;
    cfg.deformation.q = 1.1;
    cfg.t_max = 10.0;
    cfg.n_steps = n_steps;
    const llg::Trajectory num = llg::integrate_q_llg(cfg);
    const llg::Trajectory ref = llg::closed_form_q(cfg);
    double err = 0.0;
    for (std::size_t i = 0; i < num.times.size(); ++i)
        err = std::max({err, std::abs(num.magnetizations[i].mx - ref.magnetizations[i].mx),
                        std::abs(num.magnetizations[i].my - ref.magnetizations[i].my)});
    return err;
}

void c10_rk4_order(VerificationReport& rep) {
    const double e1 = matched_error(250);
    const double e2 = matched_error(500);
    const double e3 = matched_error(1000);
    const double order = std::min(std::log2(e1 / e2), std::log2(e2 / e3));
    add(rep, "c10.rk4_order_matched", order, 3.8, order >= 3.8,
        "dyadic refinement n=250/500/1000, q=1.1, eigenvalue-matched vs closed form");

    // ExplicitReal mode: self-convergence on dyadic grids.
    auto run = [](int n) {
        llg::SimConfigQ cfg;
        cfg.deformation.q = 1.1;
        cfg.deformation.lambda = Complex(0.05, 0.0);
        cfg.lambda_mode = llg::LambdaMode::ExplicitReal;
        cfg.t_max = 10.0;
        cfg.n_steps = n;
        return llg::integrate_q_llg(cfg);
    };
    const llg::Trajectory a = run(250), b = run(500), c = run(1000);
    double d1 = 0.0, d2 = 0.0;
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        d1 = std::max(d1, std::abs(a.magnetizations[i].mx - b.magnetizations[2 * i].mx));
        d2 = std::max(d2, std::abs(b.magnetizations[2 * i].mx - c.magnetizations[4 * i].mx));
    }
    // ||x_h - x_{h/2}|| / ||x_{h/2} - x_{h/4}|| ~ 2^p for order p.
    const double order2 = std::log2(d1 / d2);
    add(rep, "c10.rk4_order_explicit", order2, 3.8, order2 >= 3.8,
        "dyadic self-convergence, q=1.1, lambda=0.05 (real)");
}

// --- criterion 11: Mittag-Leffler special values ---------------------------

void c11_ml_values(VerificationReport& rep) {
    const auto xs = linspace(-3.0, 3.0, 61);
    double e_exp = 0.0, e_cos = 0.0, e_erfc = 0.0;
    for (double x : xs) {
        const double v1 = specfun::ml({1.0, 1.0}, Complex(x, 0.0)).value.real();
        e_exp = std::max(e_exp, std::abs(v1 - std::exp(x)) / std::exp(x));

        const double v2 = specfun::ml({2.0, 1.0}, Complex(-x * x, 0.0)).value.real();
        if (std::abs(std::cos(x)) > 1e-3)
            e_cos = std::max(e_cos, std::abs(v2 - std::cos(x)) / std::abs(std::cos(x)));

        const double vh = specfun::ml({0.5, 1.0}, Complex(x, 0.0)).value.real();
        const double ref = std::exp(x * x) * std::erfc(-x);
        e_erfc = std::max(e_erfc, std::abs(vh - ref) / std::abs(ref));
    }
    add_le(rep, "c11.E1_is_exp", e_exp, 1e-10, "x in [-3,3], relative");
    add_le(rep, "c11.E2_is_cos", e_cos, 1e-10, "E_2(-x^2) vs cos x, relative");
    add_le(rep, "c11.Ehalf_is_erfc", e_erfc, 1e-10,
           "E_{1/2}(x) vs exp(x^2) erfc(-x), relative");
}

// --- module invariants beyond the numbered criteria -----------------------

void c12_envelope_identity(VerificationReport& rep) {
    double worst = 0.0;
    for (double q : {0.7, 0.9, 1.1, 1.5}) {
        const specfun::DeformationQ d{q, Complex(1.0, 0.0), 1.0};
        for (double x = -20.0; x <= 20.0; x += 0.5) {
            const double c = specfun::q_cos(d, x);
            const double s = specfun::q_sin(d, x);
            const double env = specfun::q_trig_envelope_sq(d, x);
            worst = std::max(worst, std::abs(c * c + s * s - env) / env);
        }
    }
    add_le(rep, "c12.q_trig_envelope_identity", worst, 1e-12,
           "q in {0.7,0.9,1.1,1.5}, x in [-20,20]");
}

void c13_ml_recurrence(VerificationReport& rep) {
    // E_{a,b}(z) = z E_{a,a+b}(z) + 1/Gamma(b), checked against the two
    // independently produced accuracy estimates.
    const double abs[][2] = {{0.6, 1.0}, {0.9, 1.3}, {1.3, 0.8}, {1.8, 1.0}};
    const double zs[] = {-8.0, -3.0, -1.0, 0.5, 2.0, 5.0};
    double worst = 0.0;
    for (const auto& ab : abs)
        for (double z : zs) {
            const auto lhs = specfun::ml({ab[0], ab[1]}, Complex(z, 0.0));
            const auto rhs = specfun::ml({ab[0], ab[0] + ab[1]}, Complex(z, 0.0));
            const double head = 1.0 / std::tgamma(ab[1]);
            const double diff =
                std::abs(lhs.value.real() - (z * rhs.value.real() + head));
            const double budget = lhs.accuracy + std::abs(z) * rhs.accuracy +
                                  8e-16 * (std::abs(head) + std::abs(lhs.value));
            worst = std::max(worst, diff / budget);
        }
    add(rep, "c13.ml_recurrence_within_estimate", worst, 1.0, worst <= 1.0,
        "|E_{a,b} - z E_{a,a+b} - 1/Gamma(b)| vs combined accuracy estimate");
}

void c14_operator_classical_limits(VerificationReport& rep) {
    // Both operators reduce to d/dx on polynomials.
    deformed_ops::Sampled1DFunction cubic{
        [](double x) { return Complex(x * x * x - 2.0 * x + 1.0, 0.0); },
        [](double x) { return Complex(3.0 * x * x - 2.0, 0.0); },
    };
    deformed_ops::Sampled1DFunction cubic_numeric{cubic.eval, {}};
    double worst_analytic = 0.0, worst_numeric = 0.0;
    for (double x : {0.5, 1.0, 2.0, 3.0}) {
        const double exact = 3.0 * x * x - 2.0;
        const Complex a = deformed_ops::scale_q_derivative(cubic, {1.0, Complex(2.0, 0.0), 1.0}, x);
        const Complex b = deformed_ops::axiomatic_derivative(cubic, 1.0, x);
        worst_analytic = std::max({worst_analytic, std::abs(a.real() - exact) / std::abs(exact),
                                   std::abs(b.real() - exact) / std::abs(exact)});
        const Complex an = deformed_ops::scale_q_derivative(cubic_numeric, {1.0, Complex(2.0, 0.0), 1.0}, x);
        const Complex bn = deformed_ops::axiomatic_derivative(cubic_numeric, 1.0, x);
        worst_numeric = std::max({worst_numeric, std::abs(an.real() - exact) / std::abs(exact),
                                  std::abs(bn.real() - exact) / std::abs(exact)});
    }
    add_le(rep, "c14.operators_reduce_analytic", worst_analytic, 1e-13,
           "q=1 / alpha=1 on x^3-2x+1, analytic derivative path");
    add_le(rep, "c14.operators_reduce_numeric", worst_numeric, 1e-9,
           "q=1 / alpha=1 on x^3-2x+1, 5-point stencil path");
}

} // namespace

VerificationReport run_all() {
    VerificationReport rep;
    const std::function<void(VerificationReport&)> criteria[] = {
        c01_classical_q, c02_classical_alpha, c03_q_eigenvalue,
        c04_alpha_eigenvalue, c05_fig1, c06_fig2, c07_cross_oracle,
        c08_algebra, c09_evolution, c10_rk4_order, c11_ml_values,
        c12_envelope_identity, c13_ml_recurrence, c14_operator_classical_limits,
    };
    int idx = 1;
    for (const auto& fn : criteria) {
        try {
            fn(rep);
        } catch (const std::exception& e) {
            char name[32];
            std::snprintf(name, sizeof name, "c%02d.exception", idx);
            add(rep, name, 0.0, 0.0, false, e.what());
        }
        ++idx;
    }
    rep.overall = std::all_of(rep.checks.begin(), rep.checks.end(),
                              [](const Check& c) { return c.pass; });
    return rep;
}

std::string report_to_json(const VerificationReport& rep) {
    std::ostringstream os;
    char buf[64];
    os << "{\n  \"tool_version\": \"" << rep.tool_version << "\",\n";
    os << "  \"overall\": \"" << (rep.overall ? "pass" : "fail") << "\",\n";
    os << "  \"checks\": [\n";
    for (std::size_t i = 0; i < rep.checks.size(); ++i) {
        const Check& c = rep.checks[i];
        os << "    {\"name\": \"" << c.name << "\", \"status\": \""
           << (c.pass ? "pass" : "fail") << "\", ";
        std::snprintf(buf, sizeof buf, "%.17g", c.measured);
        os << "\"measured\": " << buf << ", ";
        std::snprintf(buf, sizeof buf, "%.17g", c.bound);
        os << "\"bound\": " << buf << ", ";
        os << "\"params_echo\": \"" << c.params_echo << "\"}";
        os << (i + 1 < rep.checks.size() ? ",\n" : "\n");
    }
    os << "  ]\n}\n";
    return os.str();
}

} // namespace dllg::verify
