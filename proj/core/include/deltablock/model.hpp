#pragma once

#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace deltablock {

enum class port_direction { in, out };

std::string_view to_string(port_direction dir);

/// One end of a connection. An empty block name addresses a boundary port
/// of the enclosing context; otherwise a port of a named child block.
struct endpoint {
    std::string block;
    std::string port;

    bool is_boundary() const { return block.empty(); }

    friend bool operator==(const endpoint&, const endpoint&) = default;
};

endpoint boundary(std::string port);
endpoint child_port(std::string block, std::string port);

/// Renders "port" for boundary endpoints, "block.port" otherwise.
std::string to_string(const endpoint& ep);

/// Directed signal line. Identified by its (source, target) pair.
struct connection {
    endpoint source;
    endpoint target;

    friend bool operator==(const connection&, const connection&) = default;
};

struct block;

/// Port lists, child blocks and wiring of a model or subsystem body.
/// Ports and blocks share one flat name space per context. Every list
/// keeps insertion order; nothing here is ever sorted implicitly.
struct context {
    std::vector<std::string> in_ports;
    std::vector<std::string> out_ports;
    std::vector<block> blocks;
    std::vector<connection> connections;

    const block* find_block(std::string_view name) const;
    block* find_block(std::string_view name);
    bool has_port(port_direction dir, std::string_view name) const;

    /// True if any port or block in this context uses the name.
    bool name_taken(std::string_view name) const;

    friend bool operator==(const context&, const context&) = default;
};

/// Hierarchical block with an inline body.
struct subsystem {
    std::string name;
    context body;

    friend bool operator==(const subsystem&, const subsystem&) = default;
};

/// Block that stands for a separately defined model.
struct model_reference {
    std::string name;
    std::string ref_model;

    friend bool operator==(const model_reference&, const model_reference&) = default;
};

struct block {
    std::variant<subsystem, model_reference> node;

    const std::string& name() const;

    const subsystem* as_subsystem() const { return std::get_if<subsystem>(&node); }
    subsystem* as_subsystem() { return std::get_if<subsystem>(&node); }
    const model_reference* as_model_ref() const { return std::get_if<model_reference>(&node); }
    model_reference* as_model_ref() { return std::get_if<model_reference>(&node); }

    friend bool operator==(const block&, const block&) = default;
};

block make_subsystem(std::string name, context body);
block make_model_ref(std::string name, std::string ref_model);

/// Top-level named diagram.
struct model {
    std::string name;
    context body;

    friend bool operator==(const model&, const model&) = default;
};

/// All models of one workspace, in insertion order. Names are unique;
/// the parser and the delta engine both maintain that invariant.
struct model_library {
    std::vector<model> models;

    const model* find(std::string_view name) const;
    model* find(std::string_view name);

    friend bool operator==(const model_library&, const model_library&) = default;
};

/// External view of a block: the port names visible to its parent.
struct block_interface {
    std::set<std::string> in_ports;
    std::set<std::string> out_ports;

    /// True if this interface offers at least every port of `other`,
    /// per direction.
    bool includes(const block_interface& other) const;

    friend bool operator==(const block_interface&, const block_interface&) = default;
};

} // namespace deltablock
