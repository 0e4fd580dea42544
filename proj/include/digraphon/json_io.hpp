#ifndef DIGRAPHON_JSON_IO_HPP
#define DIGRAPHON_JSON_IO_HPP

#include <string>

#include "digraphon/core.hpp"

namespace digraphon {

/// {"measures":[...],"values":[[...]]}; doubles round-trip bit-exactly.
std::string serialize(const StepDigraphon& g);
StepDigraphon parse_digraphon(const std::string& text);

/// Edge-list text: first line "n", then "u v" lines; '#' starts a comment.
std::string serialize(const Digraph& g);
Digraph parse_digraph(const std::string& text);

}  // namespace digraphon

#endif  // DIGRAPHON_JSON_IO_HPP
