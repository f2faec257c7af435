#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "deltablock/delta_ast.hpp"
#include "deltablock/model.hpp"
#include "deltablock/result.hpp"

namespace deltablock {

/// Why a delta operation was refused. Each code corresponds to exactly
/// one application condition checked by the engine.
enum class apply_error_code {
    duplicate_name,           ///< added element's name already taken
    dangling_connection_end,  ///< connection endpoint does not resolve
    target_occupied,          ///< connection target already driven
    port_still_connected,     ///< removed port still used by a connection
    missing_element,          ///< strict removal of an absent element
    element_still_connected,  ///< removed block still has incident connections
    invalid_context_kind,     ///< modify target has the wrong kind
    context_not_found,        ///< modify target does not exist
    replace_target_missing,   ///< replaced block does not exist
    name_clash_after_replace, ///< substitute name collides with a neighbour
    unknown_substitute_model, ///< substitute references an undefined model
    incompatible_interface,   ///< substitute lacks ports of the old block
};

std::string_view to_string(apply_error_code code);

struct application_error {
    apply_error_code code;
    std::string delta;               ///< failing delta, empty for bare ops
    std::vector<std::size_t> op_path; ///< modification index, then op indices
    std::string detail;
};

/// "delta DTW: op 0.3: MissingElement: no out port 'x' to remove"
std::string format(const application_error& e);

/// Applies one operation to a copy of the context. The library is only
/// consulted to resolve model-reference interfaces.
result<context, application_error> apply_op(const context& ctx, const delta_op& op,
                                            const model_library& lib);

/// Applies a whole delta to a copy of the library. Either every operation
/// succeeds and the new library is returned, or the first violated
/// condition is reported and the input remains untouched.
result<model_library, application_error> apply_delta(const model_library& lib, const delta& d);

} // namespace deltablock
