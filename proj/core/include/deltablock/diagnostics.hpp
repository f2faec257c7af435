#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace deltablock {

enum class severity { error, warning };

enum class diag_code {
    duplicate_name,    ///< same name used twice in one context
    dangling_endpoint, ///< connection end names no existing port
    direction_error,   ///< endpoint exists but has the wrong direction
    target_occupied,   ///< two connections drive the same target
    unknown_model,     ///< model reference to an undefined model
    reference_cycle,   ///< model transitively references itself
    unconnected_port,  ///< declared port never used by any connection
};

severity severity_of(diag_code code);
std::string_view to_string(diag_code code);

/// Where a diagnostic points: a model, the subsystem path inside it and,
/// when it concerns a single element, that element's name.
struct diag_location {
    std::string model;
    std::vector<std::string> path;
    std::string element;

    friend bool operator==(const diag_location&, const diag_location&) = default;
};

struct diagnostic {
    diag_code code;
    diag_location location;
    std::string message;

    severity level() const { return severity_of(code); }

    friend bool operator==(const diagnostic&, const diagnostic&) = default;
};

/// One-line rendering: "error TargetOccupied at Model/sub: message".
std::string format(const diagnostic& d);

bool has_errors(const std::vector<diagnostic>& diags);

} // namespace deltablock
