#pragma once

#include <string>
#include <vector>

#include "ocqsl/harness/config.hpp"

namespace ocqsl::harness {

/// fig1a, fig1b, fig2, fig3a, fig3b, supp-a, supp-b, supp-c.
std::vector<std::string> preset_names();

/// Fully resolved config for a figure. Throws ConfigError for unknown names.
RunConfig preset(const std::string& name);

}  // namespace ocqsl::harness
