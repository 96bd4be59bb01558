#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cechborder/spaces.hpp"

namespace cechb {

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& what);
    int line;
};

// Line grammar:
//   vertex <label> stage=<k> [inA]
//   simplex <label> <label> ...      (two or more; every face must be listed)
//   depth <k>                        (optional, at most once)
//   # comment
// Lines may come in any order; repeated identical lines are ignored.
SpacePair parse_space(std::istream& in);
SpacePair parse_space_text(const std::string& text);
SpacePair load_space(const std::string& path);

// Canonical form: depth, vertices in id order, then simplices by dimension
// and id order.
std::string render_space(const SpacePair& pair);

// One whitespace-separated list of vertex labels per line; each list names the
// full subcomplex on those vertices.
std::vector<std::vector<bool>> parse_family(std::istream& in, const FilteredSpace& space);
std::vector<std::vector<bool>> load_family(const std::string& path, const FilteredSpace& space);

}  // namespace cechb
