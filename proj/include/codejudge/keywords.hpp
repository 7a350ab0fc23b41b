#pragma once

#include <set>
#include <string>

#include "codejudge/core.hpp"

namespace codejudge {

// Reserved words per language, loaded from the embedded copies of the
// data/keywords/*.txt files (one token per line, UTF-8).
const std::set<std::string>& keywords(Lang language);

// Raw file content as embedded at build time.
const char* keyword_data(Lang language);

}  // namespace codejudge
