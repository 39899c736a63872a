#pragma once

#include "rootcalc/ext_name.hpp"
#include "rootcalc/poly.hpp"

#include <functional>
#include <optional>
#include <string>

namespace rootcalc {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// integers, p, v<k>, t<k>, ^, *, juxtaposition, +, -, parentheses
GradedPoly parse_poly(const std::string& s, int p);

using OpaqueLookup = std::function<std::optional<ExtName>(const std::string&)>;

// alpha{i/j}, alpha<i>, atilde{i}, beta{i/j}, beta<i>, 1, opaque labels via lookup,
// ^e, products by * or juxtaposition, trailing /factor for quotients
ExtName parse_ext_name(const std::string& s, int p, const OpaqueLookup& lookup = {});

}  // namespace rootcalc
