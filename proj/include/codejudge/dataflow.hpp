#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "codejudge/syntax.hpp"

namespace codejudge {

// One def-use link: the identifier leaf at use_id reads the value written by
// the identifier leaf at def_id. Node ids are preorder indices into the tree.
struct DataflowEdge {
    size_t def_id = 0;
    size_t use_id = 0;
    std::string name;
};

struct DataflowGraph {
    std::vector<DataflowEdge> edges;
};

// Straight-line def-use extraction: statements are scanned in source order,
// the last definition of a name wins, right-hand sides are read before
// left-hand targets bind. Only bare identifiers define; attribute and
// subscript targets count as uses of the base.
DataflowGraph extract_dataflow(const SyntaxTree& tree);

}  // namespace codejudge
