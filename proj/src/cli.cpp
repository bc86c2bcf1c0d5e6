#include "dllg/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "dllg/verify.hpp"

namespace dllg::cli {

namespace {

using nlohmann::json;

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::SimulateQ: return "simulate_q";
        case Mode::SimulateAlpha: return "simulate_alpha";
        case Mode::VerifyAll: return "verify_all";
        case Mode::SpecialEval: return "special_eval";
    }
    return "?";
}

Mode mode_from_string(const std::string& s) {
    if (s == "simulate_q") return Mode::SimulateQ;
    if (s == "simulate_alpha") return Mode::SimulateAlpha;
    if (s == "verify_all") return Mode::VerifyAll;
    if (s == "special_eval") return Mode::SpecialEval;
    throw ValidationError("mode: must be one of simulate_q, simulate_alpha, "
                          "verify_all, special_eval; got \"" + s + "\"");
}

double get_number(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number())
        throw ValidationError(key + ": must be a number");
    return j[key].get<double>();
}

int get_integer(const json& j, const std::string& key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer())
        throw ValidationError(key + ": must be an integer");
    return j[key].get<int>();
}

std::string get_string(const json& j, const std::string& key,
                       const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string())
        throw ValidationError(key + ": must be a string");
    return j[key].get<std::string>();
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : allowed)
            if (item.key() == k) ok = true;
        if (!ok)
            throw ValidationError(item.key() + ": unknown configuration key");
    }
}

void validate_steps(int n_steps) {
    if (n_steps < 2) throw ValidationError("n_steps: must be >= 2");
}

double validate_t_max(double t_max) {
    if (t_max < 0.0 || !std::isfinite(t_max))
        throw ValidationError("t_max: must be positive");
    return t_max;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ParseError("config must be a JSON object");
    if (!j.contains("mode"))
        throw ValidationError("mode: required key is missing");
    if (!j["mode"].is_string())
        throw ValidationError("mode: must be a string");

    RunConfig cfg;
    cfg.mode = mode_from_string(j["mode"].get<std::string>());
    cfg.output_path = get_string(j, "output", "");
    cfg.report_path = get_string(j, "report", "");
    cfg.plot_path = get_string(j, "plot", "");

    switch (cfg.mode) {
        case Mode::SimulateQ: {
            reject_unknown_keys(j, {"mode", "q", "lambda", "lambda_mode", "gamma_h0",
                                    "theta0", "amplitude", "t_max", "n_steps",
                                    "output", "report", "plot"});
            llg::SimConfigQ sim;
            sim.deformation.q = get_number(j, "q", 1.0);
            sim.deformation.lambda = {get_number(j, "lambda", 1.0), 0.0};
            const std::string lm = get_string(j, "lambda_mode", "eigenvalue_matched");
            if (lm == "eigenvalue_matched")
                sim.lambda_mode = llg::LambdaMode::EigenvalueMatched;
            else if (lm == "explicit_real")
                sim.lambda_mode = llg::LambdaMode::ExplicitReal;
            else
                throw ValidationError(
                    "lambda_mode: must be eigenvalue_matched or explicit_real");
            sim.scales.gamma = get_number(j, "gamma_h0", 1.0);
            sim.field.h0 = 1.0;
            if (!std::isfinite(sim.scales.gamma))
                throw ValidationError("gamma_h0: must be finite");
            sim.theta0 = get_number(j, "theta0", 0.0);
            sim.rho = get_number(j, "amplitude", 1.0);
            sim.t_max = validate_t_max(get_number(j, "t_max", 0.0));
            sim.n_steps = get_integer(j, "n_steps", 10000);
            validate_steps(sim.n_steps);
            cfg.sim_q = sim;
            break;
        }
        case Mode::SimulateAlpha: {
            reject_unknown_keys(j, {"mode", "alpha", "omega0", "theta0", "amplitude",
                                    "t_max", "n_steps", "output", "report", "plot"});
            llg::SimConfigAlpha sim;
            sim.alpha = get_number(j, "alpha", 1.0);
            if (!(sim.alpha > 0.0) || sim.alpha > 1.2)
                throw ValidationError("alpha: must lie in (0, 1.2]");
            sim.omega0 = get_number(j, "omega0", 1.0);
            if (sim.omega0 < 0.0)
                throw ValidationError("omega0: must be non-negative");
            sim.theta0 = get_number(j, "theta0", 0.0);
            sim.amplitude = get_number(j, "amplitude", 1.0);
            sim.t_max = validate_t_max(get_number(j, "t_max", 0.0));
            sim.n_steps = get_integer(j, "n_steps", 10000);
            validate_steps(sim.n_steps);
            cfg.sim_alpha = sim;
            break;
        }
        case Mode::VerifyAll: {
            reject_unknown_keys(j, {"mode", "output", "report"});
            break;
        }
        case Mode::SpecialEval: {
            reject_unknown_keys(j, {"mode", "function", "q", "lambda", "alpha", "beta",
                                    "x_min", "x_max", "n_points", "output"});
            SpecialEvalConfig sp;
            sp.function = get_string(j, "function", "");
            if (sp.function != "q_exp" && sp.function != "q_cos" &&
                sp.function != "q_sin" && sp.function != "ml" && sp.function != "gamma")
                throw ValidationError(
                    "function: must be one of q_exp, q_cos, q_sin, ml, gamma");
            sp.deformation.q = get_number(j, "q", 1.0);
            sp.deformation.lambda = {get_number(j, "lambda", 1.0), 0.0};
            sp.ml_params.alpha = get_number(j, "alpha", 1.0);
            sp.ml_params.beta = get_number(j, "beta", 1.0);
            if (sp.function == "ml" && !(sp.ml_params.alpha > 0.0))
                throw ValidationError("alpha: must be positive");
            sp.x_min = get_number(j, "x_min", -5.0);
            sp.x_max = get_number(j, "x_max", 5.0);
            if (!(sp.x_max > sp.x_min))
                throw ValidationError("x_max: must exceed x_min");
            sp.n_points = get_integer(j, "n_points", 201);
            if (sp.n_points < 2) throw ValidationError("n_points: must be >= 2");
            cfg.special = sp;
            break;
        }
    }
    return cfg;
}

std::string serialize(const RunConfig& cfg) {
    json j;
    j["mode"] = mode_name(cfg.mode);
    switch (cfg.mode) {
        case Mode::SimulateQ: {
            const llg::SimConfigQ& s = *cfg.sim_q;
            j["q"] = s.deformation.q;
            j["lambda"] = s.deformation.lambda.real();
            j["lambda_mode"] = s.lambda_mode == llg::LambdaMode::EigenvalueMatched
                                   ? "eigenvalue_matched"
                                   : "explicit_real";
            j["gamma_h0"] = s.scales.gamma * s.field.h0;
            j["theta0"] = s.theta0;
            j["amplitude"] = s.rho;
            if (s.t_max > 0.0) j["t_max"] = s.t_max;
            j["n_steps"] = s.n_steps;
            break;
        }
        case Mode::SimulateAlpha: {
            const llg::SimConfigAlpha& s = *cfg.sim_alpha;
            j["alpha"] = s.alpha;
            j["omega0"] = s.omega0;
            j["theta0"] = s.theta0;
            j["amplitude"] = s.amplitude;
            if (s.t_max > 0.0) j["t_max"] = s.t_max;
            j["n_steps"] = s.n_steps;
            break;
        }
        case Mode::VerifyAll:
            break;
        case Mode::SpecialEval: {
            const SpecialEvalConfig& s = *cfg.special;
            j["function"] = s.function;
            j["q"] = s.deformation.q;
            j["lambda"] = s.deformation.lambda.real();
            j["alpha"] = s.ml_params.alpha;
            j["beta"] = s.ml_params.beta;
            j["x_min"] = s.x_min;
            j["x_max"] = s.x_max;
            j["n_points"] = s.n_points;
            break;
        }
    }
    if (!cfg.output_path.empty()) j["output"] = cfg.output_path;
    if (!cfg.report_path.empty()) j["report"] = cfg.report_path;
    if (!cfg.plot_path.empty()) j["plot"] = cfg.plot_path;
    return j.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw IoError("cannot open " + tmp + " for writing");
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!os) throw IoError("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoError("cannot rename " + tmp + " to " + path);
    }
}

namespace {

std::string trajectory_csv_text(const llg::Trajectory& traj) {
    std::ostringstream os;
    llg::write_trajectory_csv(traj, os);
    return os.str();
}

std::string special_csv_text(const SpecialEvalConfig& sp, double eps_rel) {
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    std::ostringstream os;
    os << "x,re,im,accuracy_estimate\n";
    specfun::MlOptions opts;
    opts.eps_rel = eps_rel;
    char buf[200];
    for (int i = 0; i < sp.n_points; ++i) {
        const double x = sp.x_min + (sp.x_max - sp.x_min) * i / (sp.n_points - 1);
        double re = 0.0, im = 0.0, acc = 0.0;
        if (sp.function == "ml") {
            const auto r = specfun::ml(sp.ml_params, {x, 0.0}, opts);
            re = r.value.real();
            im = r.value.imag();
            acc = r.accuracy;
        } else if (sp.function == "gamma") {
            re = specfun::gamma_fn(x);
            acc = 1e-13 * std::abs(re);
        } else {
            // q family: first-order amplification of the power exponent.
            const double amp =
                sp.deformation.q == 1.0 ? 2.0
                                        : 2.0 + std::abs(1.0 / (1.0 - sp.deformation.q));
            if (sp.function == "q_exp") {
                const auto v = specfun::q_exp(sp.deformation, {x, 0.0});
                re = v.real();
                im = v.imag();
                acc = amp * kEps * std::abs(v);
            } else if (sp.function == "q_cos") {
                re = specfun::q_cos(sp.deformation, x);
                acc = amp * kEps * std::sqrt(specfun::q_trig_envelope_sq(sp.deformation, x));
            } else {
                re = specfun::q_sin(sp.deformation, x);
                acc = amp * kEps * std::sqrt(specfun::q_trig_envelope_sq(sp.deformation, x));
            }
        }
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", x, re, im, acc);
        os << buf;
    }
    return os.str();
}

double env_eps_rel(double fallback) {
    const char* env = std::getenv("DEFORMED_LLG_EPS");
    if (!env) return fallback;
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
        throw ValidationError("DEFORMED_LLG_EPS: must be a positive number");
    return v;
}

int run_impl(const RunConfig& cfg) {
    const double eps_rel = env_eps_rel(cfg.eps_rel);
    switch (cfg.mode) {
        case Mode::SimulateQ: {
            const llg::SimConfigQ& sim = *cfg.sim_q;
            const llg::Trajectory traj =
                sim.lambda_mode == llg::LambdaMode::EigenvalueMatched
                    ? llg::closed_form_q(sim)
                    : llg::integrate_q_llg(sim);
            const std::string out =
                cfg.output_path.empty() ? "trajectory.csv" : cfg.output_path;
            write_file_atomic(out, trajectory_csv_text(traj));
            if (!cfg.plot_path.empty()) {
                std::vector<double> env(traj.times.size());
                const double omega = sim.scales.gamma * sim.field.h0;
                for (std::size_t i = 0; i < traj.times.size(); ++i)
                    env[i] = sim.rho *
                             llg::envelope_q(sim.deformation, omega, traj.times[i]);
                emit_plot(traj, cfg.plot_path, &env);
            }
            return kExitOk;
        }
        case Mode::SimulateAlpha: {
            const llg::Trajectory traj =
                llg::closed_form_alpha(*cfg.sim_alpha, llg::alpha_ml_options(eps_rel));
            const std::string out =
                cfg.output_path.empty() ? "trajectory.csv" : cfg.output_path;
            write_file_atomic(out, trajectory_csv_text(traj));
            if (!cfg.plot_path.empty()) emit_plot(traj, cfg.plot_path);
            return kExitOk;
        }
        case Mode::VerifyAll: {
            const verify::VerificationReport rep = verify::run_all();
            for (const auto& c : rep.checks)
                std::printf("%s  %-34s measured=%-12.5g bound=%-12.5g %s\n",
                            c.pass ? "PASS" : "FAIL", c.name.c_str(), c.measured,
                            c.bound, c.params_echo.c_str());
            const std::string out = cfg.report_path.empty() ? "verification_report.json"
                                                            : cfg.report_path;
            write_file_atomic(out, verify::report_to_json(rep));
            std::printf("overall: %s (%zu checks)\n", rep.overall ? "pass" : "fail",
                        rep.checks.size());
            return rep.overall ? kExitOk : kExitCheckFailed;
        }
        case Mode::SpecialEval: {
            const std::string out =
                cfg.output_path.empty() ? "special.csv" : cfg.output_path;
            write_file_atomic(out, special_csv_text(*cfg.special, eps_rel));
            return kExitOk;
        }
    }
    return kExitConfigError;
}

} // namespace

int run(const RunConfig& cfg) {
    try {
        return run_impl(cfg);
    } catch (const ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const Error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumericalError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericalError;
    }
}

int run_config_file(const std::string& path, Mode expected_mode,
                    const std::string& output_override,
                    const std::string& report_override,
                    const std::string& plot_override) {
    try {
        std::ifstream is(path, std::ios::binary);
        if (!is) throw IoError("cannot read config file " + path);
        std::ostringstream ss;
        ss << is.rdbuf();
        RunConfig cfg = parse_config(ss.str());
        if (cfg.mode != expected_mode)
            throw ValidationError(std::string("mode: config says ") +
                                  mode_name(cfg.mode) + " but the subcommand expects " +
                                  mode_name(expected_mode));
        if (!output_override.empty()) cfg.output_path = output_override;
        if (!report_override.empty()) cfg.report_path = report_override;
        if (!plot_override.empty()) cfg.plot_path = plot_override;
        return run(cfg);
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

// --- SVG line chart --------------------------------------------------------

namespace {

struct PlotScale {
    double t0, t1, y_abs;
    double px(double t) const { return 70.0 + (t - t0) / (t1 - t0) * 860.0; }
    double py(double y) const { return 260.0 - y / y_abs * 215.0; }
};

void append_polyline(std::ostringstream& os, const std::vector<double>& ts,
                     const std::vector<double>& ys, const PlotScale& sc,
                     const char* style) {
    os << "<polyline fill=\"none\" " << style << " points=\"";
    char buf[48];
    for (std::size_t i = 0; i < ts.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", sc.px(ts[i]), sc.py(ys[i]));
        os << buf;
    }
    os << "\"/>\n";
}

} // namespace

void emit_plot(const llg::Trajectory& traj, const std::string& path,
               const std::vector<double>* envelope) {
    if (traj.times.empty())
        throw DomainError("emit_plot: empty trajectory");
    if (envelope && envelope->size() != traj.times.size())
        throw DomainError("emit_plot: envelope length mismatch");

    PlotScale sc{traj.times.front(), traj.times.back(), 0.0};
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        sc.y_abs = std::max(sc.y_abs, std::abs(traj.magnetizations[i].mx));
    if (envelope)
        for (double e : *envelope) sc.y_abs = std::max(sc.y_abs, std::abs(e));
    if (sc.y_abs == 0.0) sc.y_abs = 1.0;
    sc.y_abs *= 1.05;
    if (sc.t1 == sc.t0) sc.t1 = sc.t0 + 1.0;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"520\" "
          "viewBox=\"0 0 960 520\">\n";
    os << "<rect width=\"960\" height=\"520\" fill=\"white\"/>\n";
    os << "<text x=\"480\" y=\"25\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"16\">m_x(t)</text>\n";

    // axes
    os << "<line x1=\"70\" y1=\"45\" x2=\"70\" y2=\"475\" stroke=\"black\"/>\n";
    os << "<line x1=\"70\" y1=\"260\" x2=\"930\" y2=\"260\" stroke=\"black\"/>\n";
    char buf[512];
    for (int i = 0; i <= 5; ++i) {
        const double t = sc.t0 + (sc.t1 - sc.t0) * i / 5;
        const double x = sc.px(t);
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.2f\" y1=\"475\" x2=\"%.2f\" y2=\"481\" stroke=\"black\"/>"
                      "<text x=\"%.2f\" y=\"497\" text-anchor=\"middle\" "
                      "font-family=\"sans-serif\" font-size=\"12\">%.4g</text>\n",
                      x, x, x, t);
        os << buf;
    }
    for (int i = -2; i <= 2; ++i) {
        const double y = sc.y_abs / 1.05 * i / 2.0;
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"64\" y1=\"%.2f\" x2=\"70\" y2=\"%.2f\" stroke=\"black\"/>"
                      "<text x=\"58\" y=\"%.2f\" text-anchor=\"end\" "
                      "font-family=\"sans-serif\" font-size=\"12\">%.4g</text>\n",
                      sc.py(y), sc.py(y), sc.py(y) + 4.0, y);
        os << buf;
    }

    std::vector<double> mx(traj.times.size());
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        mx[i] = traj.magnetizations[i].mx;
    if (envelope) {
        std::vector<double> neg(envelope->size());
        for (std::size_t i = 0; i < envelope->size(); ++i) neg[i] = -(*envelope)[i];
        append_polyline(os, traj.times, *envelope, sc,
                        "stroke=\"#d62728\" stroke-width=\"1\" stroke-dasharray=\"6 4\"");
        append_polyline(os, traj.times, neg, sc,
                        "stroke=\"#d62728\" stroke-width=\"1\" stroke-dasharray=\"6 4\"");
    }
    append_polyline(os, traj.times, mx, sc, "stroke=\"#1f77b4\" stroke-width=\"1.5\"");
    os << "</svg>\n";
    write_file_atomic(path, os.str());
}

} // namespace dllg::cli
