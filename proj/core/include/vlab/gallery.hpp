#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vlab/holofun.hpp"

namespace vlab {

/// Built-in symbols, addressed by stable public ids:
///
///   zero        0
///   const:<c>   c, written as a real number or "<re>,<im>"
///   cayley      (z - i)/(z + i)
///   inv         i/(z + i)
///   exp_iz      e^{iz}
///   exp_isqrtz  e^{i sqrt z}, principal sqrt (arg in (0, pi) on the half-plane)
///
/// All carry a closed-form derivative. Unknown ids throw ConfigError.
HoloFun gallery_symbol(std::string_view id);

/// The same symbol written in the expression language, so the symbolic
/// differentiator can be checked against the closed forms.
std::string gallery_expression(std::string_view id);

/// Representative ids used by property checks (const:<c> instantiated).
const std::vector<std::string>& gallery_ids();

/// The identity function z, used as an unbounded Bloch example.
HoloFun identity_function();

/// Parses "<re>,<im>" or a bare real number.
cplx parse_complex(std::string_view text, const std::string& field = {});

}  // namespace vlab
