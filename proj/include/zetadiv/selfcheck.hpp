#pragma once
// The randomized property suite behind the CLI selfcheck command: every
// documented invariant of the library exercised on random curves and points,
// with seeded reproducibility and a line-per-check summary.

#include <iosfwd>

#include "zetadiv/divide.hpp"

namespace zetadiv {

struct SelfCheckParams {
    unsigned n = 2, d = 3;
    uint64_t q = 13;  // prime power, n | q-1
    unsigned trials = 3;
    uint64_t seed = 1;
};

// Runs the suite, printing one line per check plus a summary. Returns 0 when
// everything passes, 2 otherwise (the first failure is named together with
// the seed that reproduces it). Bad inputs (q not a prime power, n not
// dividing q-1, ...) throw Error.
int run_selfcheck(const SelfCheckParams& params, std::ostream& os);

}  // namespace zetadiv
