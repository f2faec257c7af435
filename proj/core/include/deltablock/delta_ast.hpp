#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "deltablock/box.hpp"
#include "deltablock/model.hpp"

namespace deltablock {

struct aoc_expr;

namespace aoc {

/// Constraint of a delta without any aoc clause; always satisfied.
struct always {
    friend bool operator==(const always&, const always&) = default;
};

/// True once the named delta has been applied earlier in the order.
struct after {
    std::string delta;

    friend bool operator==(const after&, const after&) = default;
};

struct negation {
    box<aoc_expr> operand;

    friend bool operator==(const negation&, const negation&) = default;
};

struct conjunction {
    box<aoc_expr> left;
    box<aoc_expr> right;

    friend bool operator==(const conjunction&, const conjunction&) = default;
};

struct disjunction {
    box<aoc_expr> left;
    box<aoc_expr> right;

    friend bool operator==(const disjunction&, const disjunction&) = default;
};

} // namespace aoc

/// Application-order constraint over `after <delta>` atoms.
struct aoc_expr {
    std::variant<aoc::always, aoc::after, aoc::negation, aoc::conjunction, aoc::disjunction> node;

    friend bool operator==(const aoc_expr&, const aoc_expr&) = default;
};

aoc_expr aoc_always();
aoc_expr aoc_after(std::string delta);
aoc_expr aoc_not(aoc_expr e);
aoc_expr aoc_and(aoc_expr left, aoc_expr right);
aoc_expr aoc_or(aoc_expr left, aoc_expr right);

// ─── delta operations ────────────────────────────────────────────────────

struct delta_op;

struct add_port {
    port_direction direction;
    std::string name;

    friend bool operator==(const add_port&, const add_port&) = default;
};

struct add_model_ref {
    std::string name;
    std::string ref_model;

    friend bool operator==(const add_model_ref&, const add_model_ref&) = default;
};

struct add_subsystem {
    std::string name;
    context body;

    friend bool operator==(const add_subsystem&, const add_subsystem&) = default;
};

struct add_connection {
    connection conn;

    friend bool operator==(const add_connection&, const add_connection&) = default;
};

struct port_selector {
    port_direction direction;
    std::string name;

    friend bool operator==(const port_selector&, const port_selector&) = default;
};

struct block_selector {
    std::string name;

    friend bool operator==(const block_selector&, const block_selector&) = default;
};

struct connection_selector {
    connection conn;

    friend bool operator==(const connection_selector&, const connection_selector&) = default;
};

using element_selector = std::variant<port_selector, block_selector, connection_selector>;

/// Weak removals tolerate a missing element and degrade to a no-op;
/// they never bypass the still-connected checks.
struct remove_element {
    element_selector selector;
    bool weak = false;

    friend bool operator==(const remove_element&, const remove_element&) = default;
};

struct model_substitute {
    std::string ref_model;
    std::string block_name;

    friend bool operator==(const model_substitute&, const model_substitute&) = default;
};

struct subsystem_substitute {
    std::string block_name;
    context body;

    friend bool operator==(const subsystem_substitute&, const subsystem_substitute&) = default;
};

using substitute = std::variant<model_substitute, subsystem_substitute>;

/// Swaps a block for a substitute with a compatible interface and rewires
/// every incident connection to the new block, preserving their order.
struct replace_block {
    std::string target;
    substitute with;

    friend bool operator==(const replace_block&, const replace_block&) = default;
};

struct modify_subsystem {
    std::string name;
    std::vector<delta_op> ops;

    friend bool operator==(const modify_subsystem&, const modify_subsystem&) = default;
};

struct delta_op {
    std::variant<add_port, add_model_ref, add_subsystem, add_connection, remove_element,
                 replace_block, modify_subsystem>
        node;

    friend bool operator==(const delta_op&, const delta_op&) = default;
};

enum class context_kind { model, subsystem };

/// Top-level modification target of a delta. The concrete syntax only
/// produces model targets; the kind is kept explicit so the engine can
/// reject anything else no matter how the value was built.
struct modify_block {
    context_kind kind = context_kind::model;
    std::string target;
    std::vector<delta_op> ops;

    friend bool operator==(const modify_block&, const modify_block&) = default;
};

struct delta {
    std::string name;
    aoc_expr aoc;
    std::vector<modify_block> modifications;

    friend bool operator==(const delta&, const delta&) = default;
};

/// Name plus the set of deltas to apply, in declaration order.
struct product_configuration {
    std::string name;
    std::vector<std::string> deltas;

    friend bool operator==(const product_configuration&, const product_configuration&) = default;
};

/// All deltas of one workspace, in insertion order, unique names.
struct delta_library {
    std::vector<delta> deltas;

    const delta* find(std::string_view name) const;

    friend bool operator==(const delta_library&, const delta_library&) = default;
};

} // namespace deltablock
