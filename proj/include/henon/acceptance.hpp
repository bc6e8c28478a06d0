#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace henon::acceptance {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Runs the built-in verification fixtures; one pass/fail line per criterion.
std::vector<CriterionResult> run_all();
bool run_all(std::ostream& os);

}  // namespace henon::acceptance
