#pragma once

#include <string>

#include "deltablock/model.hpp"

namespace deltablock {

/// Canonical textual form of a library: two-space indentation, one
/// declaration per line, ports before blocks before connections, models
/// separated by a blank line. Parsing the output reproduces the library
/// byte for byte on a second render.
std::string render_library(const model_library& lib);

std::string render_model(const model& m);

} // namespace deltablock
