#ifndef DLLG_LLG_HPP
#define DLLG_LLG_HPP

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "dllg/spin_algebra.hpp"
#include "dllg/specfun.hpp"

namespace dllg::llg {

struct Magnetization {
    double mx = 0.0, my = 0.0, mz = 0.0;
};

// Effective field H_eff = h0 z-hat.  The axis is fixed.
struct FieldConfig {
    double h0 = 1.0;

    bool operator==(const FieldConfig&) const = default;
};

// Reading of the scale factor lambda in the q-deformed precession ODE.
//  EigenvalueMatched: lambda = -i gamma H0, the unique scale under which
//    the q-exponential closed form is an eigenfunction of the operator.
//  ExplicitReal: literal real lambda, solved numerically only.
enum class LambdaMode { EigenvalueMatched, ExplicitReal };

struct SimConfigQ {
    specfun::DeformationQ deformation;
    spin_algebra::PhysicalScales scales;
    FieldConfig field;
    double theta0 = 0.0; // initial phase (radians)
    double rho = 1.0;    // in-plane amplitude
    double t_max = 0.0;  // 0 selects the default of 20 precession periods
    int n_steps = 10000;
    LambdaMode lambda_mode = LambdaMode::EigenvalueMatched;

    bool operator==(const SimConfigQ&) const = default;
};

struct SimConfigAlpha {
    double alpha = 1.0;
    double omega0 = 1.0; // precession frequency
    double amplitude = 1.0;
    double theta0 = 0.0;
    double t_max = 0.0; // 0 selects the default of 20 precession periods
    int n_steps = 10000;

    bool operator==(const SimConfigAlpha&) const = default;
};

// Sampled magnetization curve with derived diagnostics.
struct Trajectory {
    std::vector<double> times;
    std::vector<Magnetization> magnetizations;
    std::vector<double> modulus;
    std::vector<double> angle_to_field; // radians; NaN where undefined
    std::vector<std::size_t> angle_undefined; // indices with |m| < 1e-14
};

// t_max actually in force for a config (resolves the 20-period default).
double effective_t_max_q(const SimConfigQ& cfg);
double effective_t_max_alpha(const SimConfigAlpha& cfg);

// Closed-form q-deformed precession: m-(t) = rho e_q(i theta0) e_q(-i w t),
// m_x = Re m-, m_y = -Im m-, m_z = 0, with w = gamma H0.
Trajectory closed_form_q(const SimConfigQ& cfg);

// RK4 integration of the q-deformed precession ODE on a uniform grid.
Trajectory integrate_q_llg(const SimConfigQ& cfg);

// Mittag-Leffler evaluation options used by the alpha closed form; the
// validity radius is widened since the orders 2*alpha > 1 keep the series
// conditioned at trajectory-scale arguments.
specfun::MlOptions alpha_ml_options(double eps_rel = 1e-12);

// Scalar components of the alpha-deformed closed form:
//   alpha_cosine = E_{2a}(-w0^2 t^{2a})
//   alpha_sine   = w0 t^a E_{2a,1+a}(-w0^2 t^{2a})
// normalized so that alpha = 1 gives cos(w0 t) and sin(w0 t) exactly.
double alpha_cosine(double alpha, double omega0, double t);
double alpha_sine(double alpha, double omega0, double t);
double alpha_cosine(double alpha, double omega0, double t,
                    const specfun::MlOptions& opts);
double alpha_sine(double alpha, double omega0, double t,
                  const specfun::MlOptions& opts);

// Closed-form alpha-deformed precession built from the pair above:
// m_x = A (cos th0 c + sin th0 s), m_y = A (cos th0 s - sin th0 c).
Trajectory closed_form_alpha(const SimConfigAlpha& cfg);
Trajectory closed_form_alpha(const SimConfigAlpha& cfg,
                             const specfun::MlOptions& opts);

// Grunwald-Letnikov discretization of the Caputo oscillator
// D^{2 alpha} x = -omega0^2 x, x(0) = x0, x'(0) = 0.  First-order accurate;
// serves as an oracle entirely independent of the Mittag-Leffler series.
Trajectory integrate_caputo_oscillator(double alpha, double omega0, double x0,
                                       int n_steps, double t_max);

// Precession envelope [1 + (1-q)^2 w^2 t^2]^(1/(2(1-q))); 1 at q = 1.
double envelope_q(const specfun::DeformationQ& d, double omega, double t);

// Fill modulus and angle-to-field series in place; returns the trajectory.
Trajectory& diagnostics(Trajectory& traj, const FieldConfig& field);

// CSV: header t,mx,my,mz,modulus,angle_rad, 17 significant digits, LF.
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);

} // namespace dllg::llg

#endif // DLLG_LLG_HPP
