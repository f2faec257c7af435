#pragma once

#include <span>
#include <string>
#include <string_view>

#include "deltablock/diagnostics.hpp"
#include "deltablock/model.hpp"
#include "deltablock/result.hpp"

namespace deltablock {

struct unknown_model_error {
    std::string ref_model;

    friend bool operator==(const unknown_model_error&, const unknown_model_error&) = default;
};

/// External port view of a block. Subsystems expose their own boundary
/// ports; model references expose the referenced model's boundary ports
/// and fail when that model is not in the library.
result<block_interface, unknown_model_error> resolve_interface(const block& blk,
                                                               const model_library& lib);

struct path_not_found {
    std::string message;
};

/// Descends from a model through nested subsystems. Fails when any
/// segment is missing or names a model reference.
result<const context*, path_not_found> lookup_context(const model_library& lib,
                                                      std::string_view model_name,
                                                      std::span<const std::string> subsystem_path);

/// Full structural validation of every context of every model. Returns
/// diagnostics sorted by (model, path, code, element); the library is
/// never modified.
std::vector<diagnostic> check_wellformed(const model_library& lib);

} // namespace deltablock
