#pragma once

#include "rootcalc/fgl.hpp"

#include <string>
#include <vector>

namespace rootcalc {

// a published closed form compared against the engine below x^through
struct GoldenCheck {
    std::string name;
    TruncatedSeries expected;
    TruncatedSeries computed;
    int through = 0;  // exponents < through are compared
    bool pass = false;
    std::string detail;
};

// all in Hazewinkel generators
std::vector<GoldenCheck> pseries_golden(int p);
std::vector<GoldenCheck> fseries_golden(int p);
std::vector<GoldenCheck> qseries_golden(int p);

std::string render_check(const GoldenCheck& c);

}  // namespace rootcalc
