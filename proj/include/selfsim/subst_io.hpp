#pragma once

#include <string>
#include <string_view>

#include "selfsim/substitution.hpp"

namespace selfsim {

// {"p", "n", "t", "color_dim", "maps": {"(b1,...,bn)": [row-major entries]}},
// keys in this order and maps in lexicographic cell order, two-space indent,
// trailing newline. Square maps only.
std::string dump_substitution(const LinearSubstitution& S);

// Inverse of dump_substitution. Throws SyntaxError on malformed JSON and
// InvalidArgument / NotPrime on inconsistent content.
LinearSubstitution load_substitution(std::string_view text);

}  // namespace selfsim
