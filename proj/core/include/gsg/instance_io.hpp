#pragma once

#include <filesystem>
#include <string>

#include "gsg/model.hpp"

namespace gsg {

// Instance documents are JSON objects:
//   {
//     "targets":    [{"rd": 1, "pd": -1, "ra": 1, "pa": -1}, ...],
//     "informants": ["u1", ...],
//     "attackers":  [{"id": "v1", "p": 0.5}, ...],
//     "edges":      [{"u": "u1", "v": "v1", "w": 0.1}, ...],
//     "r": 1, "k": 0, "lambda": 2
//   }
// Doubles are written in shortest round-trip form, so parse(dump(x)) == x.
// Edges naming unknown ids are kept with index -1 and reported by
// ValidateInstance rather than rejected at parse time.

GameInstance ParseInstance(const std::string& text);
std::string DumpInstance(const GameInstance& instance, int indent = 2);

GameInstance ReadInstanceFile(const std::filesystem::path& path);
void WriteInstanceFile(const std::filesystem::path& path,
                       const GameInstance& instance);

}  // namespace gsg
