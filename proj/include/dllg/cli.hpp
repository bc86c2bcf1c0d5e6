#ifndef DLLG_CLI_HPP
#define DLLG_CLI_HPP

#include <optional>
#include <string>
#include <vector>

#include "dllg/llg.hpp"
#include "dllg/specfun.hpp"

namespace dllg::cli {

enum class Mode { SimulateQ, SimulateAlpha, VerifyAll, SpecialEval };

// Grid evaluation request for the special-function subcommand.
struct SpecialEvalConfig {
    std::string function = "q_exp"; // q_exp | q_cos | q_sin | ml | gamma
    specfun::DeformationQ deformation;
    specfun::MLParams ml_params;
    double x_min = -5.0;
    double x_max = 5.0;
    int n_points = 201;

    bool operator==(const SpecialEvalConfig&) const = default;
};

struct RunConfig {
    Mode mode = Mode::VerifyAll;
    std::optional<llg::SimConfigQ> sim_q;
    std::optional<llg::SimConfigAlpha> sim_alpha;
    std::optional<SpecialEvalConfig> special;
    std::string output_path; // empty selects a mode-specific default
    std::string report_path; // verify mode; empty selects the default
    std::string plot_path;   // optional SVG artifact for simulate modes
    double eps_rel = 1e-12;  // Mittag-Leffler eps_rel, overridable by env

    bool operator==(const RunConfig&) const = default;
};

// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;

// Parses and validates the JSON configuration text.  Throws ParseError on
// malformed JSON (with position), ValidationError naming the offending key.
RunConfig parse_config(const std::string& text);

// Inverse of parse_config for valid configs (round-trip identity).
std::string serialize(const RunConfig& cfg);

// Executes the configured mode and writes its artifacts.  All file writes
// are whole-file atomic (temp file + rename).  Returns an exit code; does
// not throw.
int run(const RunConfig& cfg);

// Reads the config file and runs it, mapping every error to the exit-code
// contract (2 for config/IO problems, 3 for numerical failures).
int run_config_file(const std::string& path, Mode expected_mode,
                    const std::string& output_override = "",
                    const std::string& report_override = "",
                    const std::string& plot_override = "");

// Self-contained SVG line chart of m_x versus t; envelope overlay drawn
// when envelope samples are supplied.  Bit-stable for identical inputs.
void emit_plot(const llg::Trajectory& traj, const std::string& path,
               const std::vector<double>* envelope = nullptr);

// Atomic whole-file write (temp file in the target directory + rename).
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace dllg::cli

#endif // DLLG_CLI_HPP
