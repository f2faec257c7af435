#include "deltablock/wellformed.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <tuple>

namespace deltablock {

result<block_interface, unknown_model_error> resolve_interface(const block& blk,
                                                               const model_library& lib) {
    const context* body = nullptr;
    if (const auto* s = blk.as_subsystem()) {
        body = &s->body;
    } else {
        const auto& ref = *blk.as_model_ref();
        const model* m = lib.find(ref.ref_model);
        if (!m) return unknown_model_error{ref.ref_model};
        body = &m->body;
    }
    return block_interface{{body->in_ports.begin(), body->in_ports.end()},
                           {body->out_ports.begin(), body->out_ports.end()}};
}

result<const context*, path_not_found> lookup_context(const model_library& lib,
                                                      std::string_view model_name,
                                                      std::span<const std::string> subsystem_path) {
    const model* m = lib.find(model_name);
    if (!m) return path_not_found{"no model named '" + std::string{model_name} + "'"};
    const context* ctx = &m->body;
    for (const auto& seg : subsystem_path) {
        const block* b = ctx->find_block(seg);
        if (!b) return path_not_found{"no block named '" + seg + "' at this level"};
        const subsystem* s = b->as_subsystem();
        if (!s) return path_not_found{"'" + seg + "' is a model reference, not a subsystem"};
        ctx = &s->body;
    }
    return ctx;
}

namespace {

enum class endpoint_role { source, target };

struct checker {
    const model_library& lib;
    std::vector<diagnostic> diags;

    void add(diag_code code, std::string model, std::vector<std::string> path,
             std::string element, std::string message) {
        diags.push_back(diagnostic{code,
                                   diag_location{std::move(model), std::move(path),
                                                 std::move(element)},
                                   std::move(message)});
    }

    /// Reports dangling or misdirected endpoints. Endpoints on blocks whose
    /// interface cannot be resolved are skipped; the block itself already
    /// carries an UnknownModel diagnostic.
    void check_endpoint(const context& ctx, const endpoint& ep, endpoint_role role,
                        const std::string& model, const std::vector<std::string>& path) {
        const char* role_name = role == endpoint_role::source ? "source" : "target";
        if (ep.is_boundary()) {
            bool is_in = ctx.has_port(port_direction::in, ep.port);
            bool is_out = ctx.has_port(port_direction::out, ep.port);
            if (!is_in && !is_out) {
                add(diag_code::dangling_endpoint, model, path, to_string(ep),
                    std::string{role_name} + " '" + to_string(ep) +
                        "' does not name a boundary port");
                return;
            }
            bool ok = role == endpoint_role::source ? is_in : is_out;
            if (!ok)
                add(diag_code::direction_error, model, path, to_string(ep),
                    std::string{role_name} + " '" + to_string(ep) +
                        "' is a boundary " + std::string{is_in ? "in" : "out"} + " port");
            return;
        }
        const block* b = ctx.find_block(ep.block);
        if (!b) {
            add(diag_code::dangling_endpoint, model, path, to_string(ep),
                std::string{role_name} + " block '" + ep.block + "' does not exist");
            return;
        }
        auto iface = resolve_interface(*b, lib);
        if (!iface.ok()) return;
        bool is_in = iface.value().in_ports.count(ep.port) > 0;
        bool is_out = iface.value().out_ports.count(ep.port) > 0;
        if (!is_in && !is_out) {
            add(diag_code::dangling_endpoint, model, path, to_string(ep),
                std::string{role_name} + " '" + to_string(ep) + "' does not name a port of '" +
                    ep.block + "'");
            return;
        }
        bool ok = role == endpoint_role::source ? is_out : is_in;
        if (!ok)
            add(diag_code::direction_error, model, path, to_string(ep),
                std::string{role_name} + " '" + to_string(ep) + "' is an " +
                    std::string{is_in ? "in" : "out"} + " port of '" + ep.block + "'");
    }

    void check_duplicates(const context& ctx, const std::string& model,
                          const std::vector<std::string>& path) {
        std::vector<std::string> names;
        for (const auto& p : ctx.in_ports) names.push_back(p);
        for (const auto& p : ctx.out_ports) names.push_back(p);
        for (const auto& b : ctx.blocks) names.push_back(b.name());
        std::map<std::string, int> counts;
        for (const auto& n : names) ++counts[n];
        std::set<std::string> reported;
        for (const auto& n : names) {
            if (counts[n] > 1 && reported.insert(n).second)
                add(diag_code::duplicate_name, model, path, n,
                    "name '" + n + "' is used " + std::to_string(counts[n]) +
                        " times in one context");
        }
    }

    void check_occupancy(const context& ctx, const std::string& model,
                         const std::vector<std::string>& path) {
        std::set<std::string> reported;
        for (const auto& c : ctx.connections) {
            int count = 0;
            for (const auto& other : ctx.connections)
                if (other.target == c.target) ++count;
            if (count > 1 && reported.insert(to_string(c.target)).second)
                add(diag_code::target_occupied, model, path, to_string(c.target),
                    "target '" + to_string(c.target) + "' is driven by " +
                        std::to_string(count) + " connections");
        }
    }

    bool endpoint_used(const context& ctx, const endpoint& ep) const {
        for (const auto& c : ctx.connections)
            if (c.source == ep || c.target == ep) return true;
        return false;
    }

    /// Warns about declared ports no connection touches. Contexts without
    /// any block or connection are treated as external behaviour stubs and
    /// stay silent.
    void check_unconnected(const context& ctx, const std::string& model,
                           const std::vector<std::string>& path) {
        if (ctx.blocks.empty() && ctx.connections.empty()) return;
        for (const auto& p : ctx.in_ports)
            if (!endpoint_used(ctx, boundary(p)))
                add(diag_code::unconnected_port, model, path, p,
                    "boundary in port '" + p + "' is not connected");
        for (const auto& p : ctx.out_ports)
            if (!endpoint_used(ctx, boundary(p)))
                add(diag_code::unconnected_port, model, path, p,
                    "boundary out port '" + p + "' is not connected");
        for (const auto& b : ctx.blocks) {
            auto iface = resolve_interface(b, lib);
            if (!iface.ok()) continue;
            for (const auto& p : iface.value().in_ports)
                if (!endpoint_used(ctx, child_port(b.name(), p)))
                    add(diag_code::unconnected_port, model, path, b.name() + "." + p,
                        "in port '" + b.name() + "." + p + "' is not connected");
            for (const auto& p : iface.value().out_ports)
                if (!endpoint_used(ctx, child_port(b.name(), p)))
                    add(diag_code::unconnected_port, model, path, b.name() + "." + p,
                        "out port '" + b.name() + "." + p + "' is not connected");
        }
    }

    void check_context(const context& ctx, const std::string& model,
                       std::vector<std::string>& path) {
        check_duplicates(ctx, model, path);
        for (const auto& b : ctx.blocks) {
            const auto* ref = b.as_model_ref();
            if (ref && lib.find(ref->ref_model) == nullptr)
                add(diag_code::unknown_model, model, path, ref->name,
                    "referenced model '" + ref->ref_model + "' is not defined");
        }
        for (const auto& c : ctx.connections) {
            check_endpoint(ctx, c.source, endpoint_role::source, model, path);
            check_endpoint(ctx, c.target, endpoint_role::target, model, path);
        }
        check_occupancy(ctx, model, path);
        check_unconnected(ctx, model, path);
        for (const auto& b : ctx.blocks) {
            if (const auto* s = b.as_subsystem()) {
                path.push_back(s->name);
                check_context(s->body, model, path);
                path.pop_back();
            }
        }
    }
};

void collect_refs(const context& ctx, const model_library& lib, std::vector<std::string>& out) {
    for (const auto& b : ctx.blocks) {
        if (const auto* r = b.as_model_ref()) {
            if (lib.find(r->ref_model) &&
                std::find(out.begin(), out.end(), r->ref_model) == out.end())
                out.push_back(r->ref_model);
        } else {
            collect_refs(b.as_subsystem()->body, lib, out);
        }
    }
}

/// Shortest reference path from `from` back to itself, empty when none.
std::vector<std::string> find_cycle(const std::string& from,
                                    const std::map<std::string, std::vector<std::string>>& edges) {
    std::map<std::string, std::string> parent;
    std::deque<std::string> queue{from};
    std::set<std::string> visited;
    while (!queue.empty()) {
        std::string u = queue.front();
        queue.pop_front();
        for (const auto& v : edges.at(u)) {
            if (v == from) {
                std::vector<std::string> path{from};
                for (std::string w = u; w != from; w = parent.at(w)) path.insert(path.begin() + 1, w);
                path.push_back(from);
                return path;
            }
            if (visited.insert(v).second) {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    return {};
}

} // namespace

std::vector<diagnostic> check_wellformed(const model_library& lib) {
    checker ch{lib, {}};
    for (const auto& m : lib.models) {
        std::vector<std::string> path;
        ch.check_context(m.body, m.name, path);
    }

    std::map<std::string, std::vector<std::string>> edges;
    for (const auto& m : lib.models) {
        std::vector<std::string> refs;
        collect_refs(m.body, lib, refs);
        edges[m.name] = std::move(refs);
    }
    for (const auto& m : lib.models) {
        auto cycle = find_cycle(m.name, edges);
        if (!cycle.empty()) {
            std::ostringstream msg;
            msg << "model-reference cycle: ";
            for (std::size_t i = 0; i < cycle.size(); ++i) {
                if (i > 0) msg << " -> ";
                msg << cycle[i];
            }
            ch.add(diag_code::reference_cycle, m.name, {}, "", msg.str());
        }
    }

    std::sort(ch.diags.begin(), ch.diags.end(), [](const diagnostic& a, const diagnostic& b) {
        return std::tie(a.location.model, a.location.path, a.code, a.location.element, a.message) <
               std::tie(b.location.model, b.location.path, b.code, b.location.element, b.message);
    });
    return std::move(ch.diags);
}

} // namespace deltablock
