#include <string>

#include <CLI11.hpp>

#include "dllg/cli.hpp"
#include "dllg/verify.hpp"

namespace {

struct CommonOpts {
    std::string config;
    std::string output;
    std::string report;
    std::string plot;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool config_required) {
    auto* c = cmd->add_option("--config", o.config, "JSON configuration file");
    if (config_required) c->required();
    cmd->add_option("--output", o.output, "Output file (overrides the config)");
    cmd->add_option("--report", o.report, "Report file (overrides the config)");
    cmd->add_option("--plot", o.plot, "SVG plot file (overrides the config)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "deformed-llg " + std::string("0.1.0") +
        " - deformed-calculus precession toolkit\n"
        "Simulates q-deformed and Mittag-Leffler precession dynamics, evaluates\n"
        "the underlying special functions and runs the verification suite.\n"
        "Config defaults: gamma_h0=1, omega0=1, theta0=0, amplitude=1,\n"
        "n_steps=10000, t_max=20 precession periods.  Times are plain units\n"
        "of 1/(gamma_h0) resp. 1/omega0.  DEFORMED_LLG_EPS overrides the\n"
        "Mittag-Leffler relative tolerance (default 1e-12)."};
    app.require_subcommand(1);

    CommonOpts sq_o, sa_o, v_o, sp_o;
    auto* sq = app.add_subcommand(
        "simulate-q", "Scale-q deformed precession trajectory (CSV, optional SVG)");
    add_common(sq, sq_o, true);
    auto* sa = app.add_subcommand(
        "simulate-alpha", "Mittag-Leffler deformed precession trajectory");
    add_common(sa, sa_o, true);
    auto* ve = app.add_subcommand(
        "verify", "Run the verification suite and write the JSON report");
    add_common(ve, v_o, false);
    auto* sp = app.add_subcommand(
        "special", "Evaluate a deformed special function on a grid (CSV)");
    add_common(sp, sp_o, true);

    CLI11_PARSE(app, argc, argv);

    using dllg::cli::Mode;
    if (sq->parsed())
        return dllg::cli::run_config_file(sq_o.config, Mode::SimulateQ, sq_o.output,
                                          sq_o.report, sq_o.plot);
    if (sa->parsed())
        return dllg::cli::run_config_file(sa_o.config, Mode::SimulateAlpha, sa_o.output,
                                          sa_o.report, sa_o.plot);
    if (sp->parsed())
        return dllg::cli::run_config_file(sp_o.config, Mode::SpecialEval, sp_o.output,
                                          sp_o.report, sp_o.plot);
    // verify: the config file is optional
    if (!v_o.config.empty())
        return dllg::cli::run_config_file(v_o.config, Mode::VerifyAll, v_o.output,
                                          v_o.report, v_o.plot);
    dllg::cli::RunConfig cfg;
    cfg.mode = Mode::VerifyAll;
    cfg.report_path = v_o.report;
    return dllg::cli::run(cfg);
}
