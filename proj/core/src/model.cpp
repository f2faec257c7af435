#include "deltablock/model.hpp"

#include <algorithm>

namespace deltablock {

std::string_view to_string(port_direction dir) {
    return dir == port_direction::in ? "in" : "out";
}

endpoint boundary(std::string port) { return {std::string{}, std::move(port)}; }

endpoint child_port(std::string block, std::string port) {
    return {std::move(block), std::move(port)};
}

std::string to_string(const endpoint& ep) {
    if (ep.is_boundary()) return ep.port;
    return ep.block + "." + ep.port;
}

const block* context::find_block(std::string_view name) const {
    for (const auto& b : blocks)
        if (b.name() == name) return &b;
    return nullptr;
}

block* context::find_block(std::string_view name) {
    return const_cast<block*>(static_cast<const context*>(this)->find_block(name));
}

bool context::has_port(port_direction dir, std::string_view name) const {
    const auto& ports = dir == port_direction::in ? in_ports : out_ports;
    return std::find(ports.begin(), ports.end(), name) != ports.end();
}

bool context::name_taken(std::string_view name) const {
    return has_port(port_direction::in, name) || has_port(port_direction::out, name) ||
           find_block(name) != nullptr;
}

const std::string& block::name() const {
    return std::visit([](const auto& b) -> const std::string& { return b.name; }, node);
}

block make_subsystem(std::string name, context body) {
    return block{subsystem{std::move(name), std::move(body)}};
}

block make_model_ref(std::string name, std::string ref_model) {
    return block{model_reference{std::move(name), std::move(ref_model)}};
}

const model* model_library::find(std::string_view name) const {
    for (const auto& m : models)
        if (m.name == name) return &m;
    return nullptr;
}

model* model_library::find(std::string_view name) {
    return const_cast<model*>(static_cast<const model_library*>(this)->find(name));
}

bool block_interface::includes(const block_interface& other) const {
    return std::includes(in_ports.begin(), in_ports.end(), other.in_ports.begin(),
                         other.in_ports.end()) &&
           std::includes(out_ports.begin(), out_ports.end(), other.out_ports.begin(),
                         other.out_ports.end());
}

} // namespace deltablock
