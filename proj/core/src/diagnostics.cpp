#include "deltablock/diagnostics.hpp"

#include <sstream>

namespace deltablock {

severity severity_of(diag_code code) {
    return code == diag_code::unconnected_port ? severity::warning : severity::error;
}

std::string_view to_string(diag_code code) {
    switch (code) {
    case diag_code::duplicate_name: return "DuplicateName";
    case diag_code::dangling_endpoint: return "DanglingEndpoint";
    case diag_code::direction_error: return "DirectionError";
    case diag_code::target_occupied: return "TargetOccupied";
    case diag_code::unknown_model: return "UnknownModel";
    case diag_code::reference_cycle: return "ReferenceCycle";
    case diag_code::unconnected_port: return "UnconnectedPort";
    }
    return "?";
}

std::string format(const diagnostic& d) {
    std::ostringstream out;
    out << (d.level() == severity::error ? "error" : "warning");
    out << ' ' << to_string(d.code) << " at " << d.location.model;
    for (const auto& seg : d.location.path) out << '/' << seg;
    if (!d.location.element.empty()) out << " [" << d.location.element << ']';
    out << ": " << d.message;
    return out.str();
}

bool has_errors(const std::vector<diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.level() == severity::error) return true;
    return false;
}

} // namespace deltablock
