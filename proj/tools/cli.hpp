#pragma once
// Command-line front end: parse curve configs, run divisions with
// certificates, enumerate torsion, print gap and intersection tables, run
// the selfcheck suite. Split from main() so the pieces are testable.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace zetadiv {

// Line-oriented "key = value" config; '#' starts a comment; lists are
// comma-separated. Field elements are written as integers in [0, q): the
// base-p digits of the integer are the coefficient vector.
struct CurveConfig {
    uint32_t p = 0;
    std::vector<uint32_t> ext;  // optional monic modulus coefficients; empty = F_p
    unsigned n = 0, d = 0;
    std::vector<uint64_t> alphas;
    std::optional<std::pair<uint64_t, uint64_t>> point;
    std::vector<uint64_t> roots;  // optional
};

CurveConfig parse_config_text(const std::string& text);
CurveConfig load_config(const std::string& path);

int cmd_divide(const CurveConfig& cfg, bool verify, bool json, uint64_t seed, std::ostream& os);
int cmd_torsion(const CurveConfig& cfg, std::ostream& os);
int cmd_gaps(unsigned n, unsigned d, const std::vector<unsigned>& label, bool json,
             std::ostream& os);
int cmd_intersect(unsigned n, unsigned d, bool json, std::ostream& os);
int cmd_selfcheck(unsigned n, unsigned d, uint64_t q, unsigned trials, uint64_t seed,
                  std::ostream& os);

// full argv-level entry point; maps Error codes to exit statuses
// (0 success, 1 input error, 2 invariant violation)
int cli_main(int argc, char** argv);

}  // namespace zetadiv
