#pragma once

// Acceptance suite: one named check per criterion, each printing a
// pass/fail line. Returns the number of failures.

#include <iosfwd>
#include <string>
#include <vector>

namespace ivpcap {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;
    double seconds;
};

std::vector<CriterionResult> run_acceptance(bool quick, std::ostream& os);

}  // namespace ivpcap
