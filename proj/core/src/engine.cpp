#include "deltablock/engine.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "deltablock/wellformed.hpp"
#include "detail/overloaded.hpp"

namespace deltablock {

std::string_view to_string(apply_error_code code) {
    switch (code) {
    case apply_error_code::duplicate_name: return "DuplicateName";
    case apply_error_code::dangling_connection_end: return "DanglingConnectionEnd";
    case apply_error_code::target_occupied: return "TargetOccupied";
    case apply_error_code::port_still_connected: return "PortStillConnected";
    case apply_error_code::missing_element: return "MissingElement";
    case apply_error_code::element_still_connected: return "ElementStillConnected";
    case apply_error_code::invalid_context_kind: return "InvalidContextKind";
    case apply_error_code::context_not_found: return "ContextNotFound";
    case apply_error_code::replace_target_missing: return "ReplaceTargetMissing";
    case apply_error_code::name_clash_after_replace: return "NameClashAfterReplace";
    case apply_error_code::unknown_substitute_model: return "UnknownSubstituteModel";
    case apply_error_code::incompatible_interface: return "IncompatibleInterface";
    }
    return "?";
}

std::string format(const application_error& e) {
    std::ostringstream out;
    if (!e.delta.empty()) out << "delta '" << e.delta << "': ";
    if (!e.op_path.empty()) {
        out << "op ";
        for (std::size_t i = 0; i < e.op_path.size(); ++i) {
            if (i > 0) out << '.';
            out << e.op_path[i];
        }
        out << ": ";
    }
    out << to_string(e.code);
    if (!e.detail.empty()) out << ": " << e.detail;
    return out.str();
}

namespace {

application_error fail(apply_error_code code, const std::vector<std::size_t>& path,
                       std::string detail) {
    return application_error{code, "", path, std::move(detail)};
}

/// Reason an endpoint cannot take the given role in this context, or
/// nothing when it resolves. Sources are boundary in ports or child out
/// ports; targets the opposite.
std::optional<std::string> endpoint_problem(const context& ctx, const endpoint& ep,
                                            bool as_source, const model_library& lib) {
    if (ep.is_boundary()) {
        port_direction want = as_source ? port_direction::in : port_direction::out;
        if (ctx.has_port(want, ep.port)) return std::nullopt;
        return "'" + to_string(ep) + "' does not resolve as a boundary " +
               std::string{to_string(want)} + " port";
    }
    const block* b = ctx.find_block(ep.block);
    if (!b) return "block '" + ep.block + "' does not exist";
    auto iface = resolve_interface(*b, lib);
    if (!iface.ok())
        return "interface of block '" + ep.block + "' cannot be resolved (unknown model '" +
               iface.error().ref_model + "')";
    const auto& ports = as_source ? iface.value().out_ports : iface.value().in_ports;
    if (ports.count(ep.port) > 0) return std::nullopt;
    return "'" + to_string(ep) + "' does not resolve as an " +
           std::string{to_string(as_source ? port_direction::out : port_direction::in)} +
           " port of '" + ep.block + "'";
}

bool endpoint_mentions_block(const endpoint& ep, const std::string& name) {
    return ep.block == name;
}

/// Parent context of the subsystem currently being modified, so removals
/// of boundary ports can see connections on their outer face as well.
/// Null at the root of an application chain.
struct outer_view {
    const context* parent;
    const std::string* name;
};

std::optional<application_error> apply_ops(context& ctx, const std::vector<delta_op>& ops,
                                           const model_library& lib,
                                           std::vector<std::size_t>& path,
                                           const outer_view* outer);

std::optional<application_error> apply_one(context& ctx, const delta_op& op,
                                           const model_library& lib,
                                           std::vector<std::size_t>& path,
                                           const outer_view* outer) {
    return std::visit(
        detail::overloaded{
            [&](const add_port& a) -> std::optional<application_error> {
                if (ctx.name_taken(a.name))
                    return fail(apply_error_code::duplicate_name, path,
                                "name '" + a.name + "' is already used in this context");
                (a.direction == port_direction::in ? ctx.in_ports : ctx.out_ports)
                    .push_back(a.name);
                return std::nullopt;
            },
            [&](const add_model_ref& a) -> std::optional<application_error> {
                if (ctx.name_taken(a.name))
                    return fail(apply_error_code::duplicate_name, path,
                                "name '" + a.name + "' is already used in this context");
                ctx.blocks.push_back(make_model_ref(a.name, a.ref_model));
                return std::nullopt;
            },
            [&](const add_subsystem& a) -> std::optional<application_error> {
                if (ctx.name_taken(a.name))
                    return fail(apply_error_code::duplicate_name, path,
                                "name '" + a.name + "' is already used in this context");
                ctx.blocks.push_back(make_subsystem(a.name, a.body));
                return std::nullopt;
            },
            [&](const add_connection& a) -> std::optional<application_error> {
                if (auto why = endpoint_problem(ctx, a.conn.source, true, lib))
                    return fail(apply_error_code::dangling_connection_end, path,
                                "source: " + *why);
                if (auto why = endpoint_problem(ctx, a.conn.target, false, lib))
                    return fail(apply_error_code::dangling_connection_end, path,
                                "target: " + *why);
                for (const auto& c : ctx.connections)
                    if (c.target == a.conn.target)
                        return fail(apply_error_code::target_occupied, path,
                                    "target '" + to_string(a.conn.target) +
                                        "' is already driven by '" + to_string(c.source) + "'");
                ctx.connections.push_back(a.conn);
                return std::nullopt;
            },
            [&](const remove_element& r) -> std::optional<application_error> {
                return std::visit(
                    detail::overloaded{
                        [&](const port_selector& sel) -> std::optional<application_error> {
                            auto& ports = sel.direction == port_direction::in ? ctx.in_ports
                                                                              : ctx.out_ports;
                            auto it = std::find(ports.begin(), ports.end(), sel.name);
                            if (it == ports.end()) {
                                if (r.weak) return std::nullopt;
                                return fail(apply_error_code::missing_element, path,
                                            "no " + std::string{to_string(sel.direction)} +
                                                " port '" + sel.name + "' to remove");
                            }
                            endpoint ep = boundary(sel.name);
                            for (const auto& c : ctx.connections)
                                if (c.source == ep || c.target == ep)
                                    return fail(apply_error_code::port_still_connected, path,
                                                "port '" + sel.name +
                                                    "' is still used by a connection");
                            if (outer) {
                                endpoint outer_ep = child_port(*outer->name, sel.name);
                                for (const auto& c : outer->parent->connections)
                                    if (c.source == outer_ep || c.target == outer_ep)
                                        return fail(
                                            apply_error_code::port_still_connected, path,
                                            "port '" + sel.name + "' of subsystem '" +
                                                *outer->name +
                                                "' is still used by a connection in the "
                                                "enclosing context");
                            }
                            ports.erase(it);
                            return std::nullopt;
                        },
                        [&](const block_selector& sel) -> std::optional<application_error> {
                            auto it = std::find_if(
                                ctx.blocks.begin(), ctx.blocks.end(),
                                [&](const block& b) { return b.name() == sel.name; });
                            if (it == ctx.blocks.end()) {
                                if (r.weak) return std::nullopt;
                                return fail(apply_error_code::missing_element, path,
                                            "no block '" + sel.name + "' to remove");
                            }
                            for (const auto& c : ctx.connections)
                                if (endpoint_mentions_block(c.source, sel.name) ||
                                    endpoint_mentions_block(c.target, sel.name))
                                    return fail(apply_error_code::element_still_connected, path,
                                                "block '" + sel.name +
                                                    "' still has incident connections");
                            ctx.blocks.erase(it);
                            return std::nullopt;
                        },
                        [&](const connection_selector& sel) -> std::optional<application_error> {
                            auto it = std::find(ctx.connections.begin(), ctx.connections.end(),
                                                sel.conn);
                            if (it == ctx.connections.end()) {
                                if (r.weak) return std::nullopt;
                                return fail(apply_error_code::missing_element, path,
                                            "no connection '" + to_string(sel.conn.source) +
                                                " -> " + to_string(sel.conn.target) +
                                                "' to remove");
                            }
                            ctx.connections.erase(it);
                            return std::nullopt;
                        },
                    },
                    r.selector);
            },
            [&](const replace_block& r) -> std::optional<application_error> {
                auto it = std::find_if(ctx.blocks.begin(), ctx.blocks.end(),
                                       [&](const block& b) { return b.name() == r.target; });
                if (it == ctx.blocks.end())
                    return fail(apply_error_code::replace_target_missing, path,
                                "no block '" + r.target + "' to replace");
                const std::string& new_name = std::visit(
                    detail::overloaded{
                        [](const model_substitute& s) -> const std::string& {
                            return s.block_name;
                        },
                        [](const subsystem_substitute& s) -> const std::string& {
                            return s.block_name;
                        },
                    },
                    r.with);
                bool clash = ctx.has_port(port_direction::in, new_name) ||
                             ctx.has_port(port_direction::out, new_name);
                if (!clash) {
                    const block* other = ctx.find_block(new_name);
                    clash = other != nullptr && other->name() != r.target;
                }
                if (clash)
                    return fail(apply_error_code::name_clash_after_replace, path,
                                "name '" + new_name +
                                    "' is already used by another element in this context");
                const auto* msub = std::get_if<model_substitute>(&r.with);
                if (msub && lib.find(msub->ref_model) == nullptr)
                    return fail(apply_error_code::unknown_substitute_model, path,
                                "substitute references undefined model '" + msub->ref_model +
                                    "'");
                auto old_iface = resolve_interface(*it, lib);
                if (!old_iface.ok())
                    return fail(apply_error_code::incompatible_interface, path,
                                "interface of replaced block '" + r.target +
                                    "' cannot be resolved (unknown model '" +
                                    old_iface.error().ref_model + "')");
                block_interface new_iface;
                if (msub) {
                    const model* m = lib.find(msub->ref_model);
                    new_iface = {{m->body.in_ports.begin(), m->body.in_ports.end()},
                                 {m->body.out_ports.begin(), m->body.out_ports.end()}};
                } else {
                    const auto& body = std::get<subsystem_substitute>(r.with).body;
                    new_iface = {{body.in_ports.begin(), body.in_ports.end()},
                                 {body.out_ports.begin(), body.out_ports.end()}};
                }
                if (!new_iface.includes(old_iface.value())) {
                    std::string missing;
                    for (const auto& p : old_iface.value().in_ports)
                        if (new_iface.in_ports.count(p) == 0) {
                            missing = "in port '" + p + "'";
                            break;
                        }
                    if (missing.empty())
                        for (const auto& p : old_iface.value().out_ports)
                            if (new_iface.out_ports.count(p) == 0) {
                                missing = "out port '" + p + "'";
                                break;
                            }
                    return fail(apply_error_code::incompatible_interface, path,
                                "substitute for '" + r.target + "' lacks " + missing);
                }
                for (auto& c : ctx.connections) {
                    if (c.source.block == r.target) c.source.block = new_name;
                    if (c.target.block == r.target) c.target.block = new_name;
                }
                *it = msub ? make_model_ref(new_name, msub->ref_model)
                           : make_subsystem(new_name,
                                            std::get<subsystem_substitute>(r.with).body);
                return std::nullopt;
            },
            [&](const modify_subsystem& m) -> std::optional<application_error> {
                block* b = ctx.find_block(m.name);
                if (!b)
                    return fail(apply_error_code::context_not_found, path,
                                "no block '" + m.name + "' in this context");
                subsystem* s = b->as_subsystem();
                if (!s)
                    return fail(apply_error_code::invalid_context_kind, path,
                                "'" + m.name + "' is a model reference, not a subsystem");
                outer_view view{&ctx, &m.name};
                return apply_ops(s->body, m.ops, lib, path, &view);
            },
        },
        op.node);
}

std::optional<application_error> apply_ops(context& ctx, const std::vector<delta_op>& ops,
                                           const model_library& lib,
                                           std::vector<std::size_t>& path,
                                           const outer_view* outer) {
    for (std::size_t i = 0; i < ops.size(); ++i) {
        path.push_back(i);
        if (auto e = apply_one(ctx, ops[i], lib, path, outer)) return e;
        path.pop_back();
    }
    return std::nullopt;
}

} // namespace

result<context, application_error> apply_op(const context& ctx, const delta_op& op,
                                            const model_library& lib) {
    context work = ctx;
    std::vector<std::size_t> path;
    if (auto e = apply_one(work, op, lib, path, nullptr)) return *e;
    return work;
}

result<model_library, application_error> apply_delta(const model_library& lib, const delta& d) {
    model_library out = lib;
    for (std::size_t mi = 0; mi < d.modifications.size(); ++mi) {
        const auto& mb = d.modifications[mi];
        std::vector<std::size_t> path{mi};
        if (mb.kind != context_kind::model) {
            application_error e = fail(apply_error_code::invalid_context_kind, path,
                                       "top-level modify target '" + mb.target +
                                           "' must be a model");
            e.delta = d.name;
            return e;
        }
        model* m = out.find(mb.target);
        if (!m) {
            application_error e = fail(apply_error_code::context_not_found, path,
                                       "no model named '" + mb.target + "'");
            e.delta = d.name;
            return e;
        }
        context work = m->body;
        if (auto e = apply_ops(work, mb.ops, out, path, nullptr)) {
            e->delta = d.name;
            return *e;
        }
        m->body = std::move(work);
    }
    return out;
}

} // namespace deltablock
