#ifndef DLLG_VERIFY_HPP
#define DLLG_VERIFY_HPP

#include <string>
#include <vector>

namespace dllg::verify {

inline constexpr const char* kToolVersion = "deformed-llg 0.1.0";

// One measured quantity compared against its pinned bound.  Checks are
// named "cNN.<detail>" so they can be grouped per criterion.
struct Check {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double bound = 0.0;
    std::string params_echo;
};

struct VerificationReport {
    std::vector<Check> checks;
    bool overall = false;
    std::string tool_version = kToolVersion;
};

// Runs the full verification suite (the eleven acceptance criteria plus
// the module invariant sweeps) and returns every sub-check.
VerificationReport run_all();

// JSON text of the report (schema: tool_version, overall, checks[]).
std::string report_to_json(const VerificationReport& rep);

} // namespace dllg::verify

#endif // DLLG_VERIFY_HPP
