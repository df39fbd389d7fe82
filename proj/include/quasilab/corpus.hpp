#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "quasilab/algebra.hpp"

namespace quasilab {

// Built-in algebras, stored as algebra-file text. Throws Error on an unknown
// name. "kleene3" is an alias of "m3".
Algebra corpus(std::string_view name);
std::string corpus_note(std::string_view name);
std::string corpus_text(std::string_view name);
std::vector<std::string> corpus_names();

}  // namespace quasilab
