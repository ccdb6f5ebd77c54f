#pragma once

#include <string>
#include <vector>

namespace bfn {

struct CheckResult {
    std::string group;
    bool pass;
    std::string detail;
};

// Embedded invariant suite: Gaunt coefficients against sphere quadrature,
// the scalar product expansions against exp(a.b), the basis conversions
// against direct evaluation, and one two-range expansion geometry against
// direct evaluation. quick trims the sweep ranges so the whole run stays
// well under ten seconds.
std::vector<CheckResult> selfcheck_run(bool quick);

}  // namespace bfn
