#pragma once

#include <cstddef>

#include "codejudge/syntax.hpp"

namespace codejudge {

// Ordered tree edit distance (Zhang-Shasha) with unit insert/delete/relabel
// costs; nodes compare by shape_label.
size_t tree_edit_distance(const SyntaxNode& a, const SyntaxNode& b);

}  // namespace codejudge
