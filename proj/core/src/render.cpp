#include "deltablock/render.hpp"

#include <sstream>

#include "detail/overloaded.hpp"

namespace deltablock {

namespace {

void indent(std::ostringstream& out, int depth) {
    for (int i = 0; i < depth; ++i) out << "  ";
}

void render_context(std::ostringstream& out, const context& ctx, int depth) {
    for (const auto& p : ctx.in_ports) {
        indent(out, depth);
        out << "in " << p << '\n';
    }
    for (const auto& p : ctx.out_ports) {
        indent(out, depth);
        out << "out " << p << '\n';
    }
    for (const auto& b : ctx.blocks) {
        indent(out, depth);
        std::visit(detail::overloaded{
                       [&](const subsystem& s) {
                           out << "subsystem " << s.name << " {\n";
                           render_context(out, s.body, depth + 1);
                           indent(out, depth);
                           out << "}\n";
                       },
                       [&](const model_reference& r) {
                           out << "mref " << r.name << " : " << r.ref_model << '\n';
                       },
                   },
                   b.node);
    }
    for (const auto& c : ctx.connections) {
        indent(out, depth);
        out << "connect " << to_string(c.source) << " -> " << to_string(c.target) << '\n';
    }
}

} // namespace

std::string render_model(const model& m) {
    std::ostringstream out;
    out << "model " << m.name << " {\n";
    render_context(out, m.body, 1);
    out << "}\n";
    return out.str();
}

std::string render_library(const model_library& lib) {
    std::string out;
    bool first = true;
    for (const auto& m : lib.models) {
        if (!first) out += '\n';
        first = false;
        out += render_model(m);
    }
    return out;
}

} // namespace deltablock
