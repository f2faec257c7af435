#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>

#include "deltablock/model.hpp"
#include "deltablock/result.hpp"
#include "deltablock/wellformed.hpp"

namespace deltablock {

inline constexpr std::size_t unlimited_depth = std::numeric_limits<std::size_t>::max();

/// Graphviz rendering of one model. Depth 0 keeps every block opaque;
/// each further level expands subsystems and resolvable model references
/// into clusters. Reference cycles stop expanding instead of recursing.
/// Output is deterministic and every edge references two emitted nodes.
result<std::string, unknown_model_error> export_dot(const model_library& lib,
                                                    std::string_view model_name,
                                                    std::size_t depth = unlimited_depth);

} // namespace deltablock
