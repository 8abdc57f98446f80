#pragma once

#include <optional>
#include <string>

#include "vahlen/verify.hpp"

namespace vahlen {

// The four built-in group configurations.  Dimensions are the smallest the
// construction allows; a larger n keeps the same matrices with e_{n-1}
// re-indexed where the entries depend on it.
enum class ExampleId { Example1, Example2, Example3, Counterexample };

std::optional<ExampleId> example_id_from_string(const std::string& s);
std::string to_string(ExampleId id);

// n == 0 selects the default dimension (4, 3, 5, 2 respectively).
GroupSpec builtin_example(ExampleId id, int n = 0);

// Per-example check configuration.  The counterexample runs with
// letter_depth 1: its factors split as G_m = J u g_m J, so depth-1 letters
// already represent every coset and deeper letters only add J-multiples.
CheckConfig default_check_config(ExampleId id);

}  // namespace vahlen
