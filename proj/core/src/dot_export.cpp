#include "deltablock/dot_export.hpp"

#include <map>
#include <sstream>

namespace deltablock {

namespace {

std::string esc(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

struct dot_writer {
    const model_library& lib;
    std::ostringstream body;
    std::set<std::string> nodes;
    struct edge {
        std::string src;
        std::string dst;
        std::string attrs;
    };
    std::vector<edge> edges;

    void indent(int n) {
        for (int i = 0; i < n; ++i) body << "  ";
    }

    void node(int ind, const std::string& id, const std::string& attrs) {
        indent(ind);
        body << '"' << esc(id) << "\" [" << attrs << "];\n";
        nodes.insert(id);
    }

    /// Emits ports and blocks of one context and records its connections
    /// as edges. `stack` holds the models currently being expanded, which
    /// stops model-reference cycles from recursing.
    void context_nodes(const std::string& prefix, const context& ctx, std::size_t depth,
                       int ind, std::set<std::string>& stack) {
        for (const auto& p : ctx.in_ports)
            node(ind, prefix + "/" + p, "label=\"" + esc(p) + "\", shape=ellipse");
        for (const auto& p : ctx.out_ports)
            node(ind, prefix + "/" + p, "label=\"" + esc(p) + "\", shape=ellipse, peripheries=2");

        std::map<std::string, bool> expanded;
        for (const auto& b : ctx.blocks) {
            std::string id = prefix + "/" + b.name();
            if (const auto* s = b.as_subsystem()) {
                if (depth > 0) {
                    expanded[b.name()] = true;
                    indent(ind);
                    body << "subgraph \"cluster_" << esc(id) << "\" {\n";
                    indent(ind + 1);
                    body << "label=\"" << esc(b.name()) << "\";\n";
                    indent(ind + 1);
                    body << "style=rounded;\n";
                    context_nodes(id, s->body, depth - 1, ind + 1, stack);
                    indent(ind);
                    body << "}\n";
                } else {
                    expanded[b.name()] = false;
                    node(ind, id, "label=\"" + esc(b.name()) + "\", shape=box");
                }
                continue;
            }
            const auto& ref = *b.as_model_ref();
            std::string label = ref.name + " : " + ref.ref_model;
            const model* target = lib.find(ref.ref_model);
            bool expand = depth > 0 && target != nullptr && stack.count(ref.ref_model) == 0;
            expanded[b.name()] = expand;
            if (!expand) {
                node(ind, id, "label=\"" + esc(label) + "\", shape=box");
                continue;
            }
            stack.insert(ref.ref_model);
            indent(ind);
            body << "subgraph \"cluster_" << esc(id) << "\" {\n";
            indent(ind + 1);
            body << "label=\"" << esc(label) << "\";\n";
            indent(ind + 1);
            body << "style=rounded;\n";
            context_nodes(id, target->body, depth - 1, ind + 1, stack);
            indent(ind);
            body << "}\n";
            stack.erase(ref.ref_model);
        }

        for (const auto& c : ctx.connections) {
            edge e;
            std::string attrs;
            auto resolve = [&](const endpoint& ep, const char* label_attr) {
                if (ep.is_boundary()) return prefix + "/" + ep.port;
                if (expanded.count(ep.block) > 0 && expanded[ep.block])
                    return prefix + "/" + ep.block + "/" + ep.port;
                if (!attrs.empty()) attrs += ", ";
                attrs += std::string{label_attr} + "=\"" + esc(ep.port) + "\"";
                return prefix + "/" + ep.block;
            };
            e.src = resolve(c.source, "taillabel");
            e.dst = resolve(c.target, "headlabel");
            e.attrs = std::move(attrs);
            edges.push_back(std::move(e));
        }
    }
};

} // namespace

result<std::string, unknown_model_error> export_dot(const model_library& lib,
                                                    std::string_view model_name,
                                                    std::size_t depth) {
    const model* m = lib.find(model_name);
    if (!m) return unknown_model_error{std::string{model_name}};

    dot_writer w{lib};
    std::set<std::string> stack{std::string{model_name}};
    w.context_nodes(std::string{model_name}, m->body, depth, 1, stack);

    std::ostringstream out;
    out << "digraph \"" << esc(model_name) << "\" {\n";
    out << "  rankdir=LR;\n";
    out << w.body.str();
    for (const auto& e : w.edges) {
        for (const auto& id : {e.src, e.dst}) {
            if (w.nodes.count(id) == 0) {
                std::string label = id.substr(id.rfind('/') + 1);
                out << "  \"" << esc(id) << "\" [label=\"" << esc(label)
                    << "\", shape=box, style=dashed];\n";
                w.nodes.insert(id);
            }
        }
    }
    for (const auto& e : w.edges) {
        out << "  \"" << esc(e.src) << "\" -> \"" << esc(e.dst) << '"';
        if (!e.attrs.empty()) out << " [" << e.attrs << ']';
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace deltablock
