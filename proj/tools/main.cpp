#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "deltablock/dot_export.hpp"
#include "deltablock/render.hpp"
#include "deltablock/scheduler.hpp"
#include "deltablock/wellformed.hpp"
#include "workspace.hpp"

namespace fs = std::filesystem;
using namespace deltablock;

namespace {

int fail_usage(const std::string& message) {
    std::cerr << "error: " << message << '\n';
    return 2;
}

bool write_file(const fs::path& path, const std::string& content, std::string& error) {
    std::ofstream out{path, std::ios::binary};
    if (out) {
        out << content;
        out.flush();
    }
    if (!out) {
        error = "cannot write '" + path.string() + "'";
        return false;
    }
    return true;
}

int cmd_check(const cli::workspace& ws, bool strict) {
    auto diags = check_wellformed(ws.core);
    int errors = 0;
    int warnings = 0;
    for (const auto& d : diags) {
        std::cerr << format(d) << '\n';
        ++(d.level() == severity::error ? errors : warnings);
    }
    std::cerr << "check: " << ws.core.models.size() << " models, " << ws.deltas.deltas.size()
              << " deltas, " << ws.products.size() << " products, " << errors << " errors, "
              << warnings << " warnings\n";
    if (errors > 0 || (strict && warnings > 0)) return 1;
    return 0;
}

int cmd_order(const cli::workspace& ws, const std::string& product) {
    const auto* config = cli::find_product(ws, product);
    if (!config) return fail_usage("no product named '" + product + "'");
    auto order = compute_order(*config, ws.deltas);
    if (!order.ok()) {
        std::cerr << format(order.error(), product) << '\n';
        return std::holds_alternative<unknown_delta>(order.error()) ? 2 : 1;
    }
    for (const auto& name : order.value()) std::cout << name << '\n';
    return 0;
}

struct product_outcome {
    int exit_code;
    int errors = -1;
    int warnings = -1;
};

/// Generates one product into its own directory. The variant and its
/// diagnostics are written even when the diagnostics contain errors; only
/// ordering or application failures leave no files behind.
product_outcome run_generate(const cli::workspace& ws, const product_configuration& config,
                             const fs::path& out_dir, bool want_dot, bool strict) {
    auto res = generate(ws.core, ws.deltas, config);
    if (!res.ok()) {
        std::cerr << format(res.error(), config.name) << '\n';
        return {1};
    }
    const auto& g = res.value();

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        std::cerr << "error: cannot create '" << out_dir.string() << "': " << ec.message()
                  << '\n';
        return {2};
    }

    std::string order_text;
    for (const auto& name : g.applied_order) order_text += name + '\n';
    std::string diag_text;
    int errors = 0;
    int warnings = 0;
    for (const auto& d : g.diagnostics) {
        diag_text += format(d) + '\n';
        ++(d.level() == severity::error ? errors : warnings);
    }

    std::string error;
    if (!write_file(out_dir / "variant.dbm", render_library(g.variant), error) ||
        !write_file(out_dir / "order.txt", order_text, error) ||
        !write_file(out_dir / "diagnostics.txt", diag_text, error)) {
        std::cerr << "error: " << error << '\n';
        return {2};
    }
    if (want_dot) {
        std::string dot;
        bool first = true;
        for (const auto& m : g.variant.models) {
            if (!first) dot += '\n';
            first = false;
            dot += export_dot(g.variant, m.name).value();
        }
        if (!write_file(out_dir / "variant.dot", dot, error)) {
            std::cerr << "error: " << error << '\n';
            return {2};
        }
    }

    for (const auto& d : g.diagnostics) std::cerr << format(d) << '\n';
    std::cerr << "generated '" << config.name << "': " << g.applied_order.size() << " deltas, "
              << errors << " errors, " << warnings << " warnings\n";
    int code = errors > 0 || (strict && warnings > 0) ? 1 : 0;
    return {code, errors, warnings};
}

int cmd_generate(const cli::workspace& ws, const std::string& product, const fs::path& out_dir,
                 bool want_dot, bool strict) {
    const auto* config = cli::find_product(ws, product);
    if (!config) return fail_usage("no product named '" + product + "'");
    return run_generate(ws, *config, out_dir, want_dot, strict).exit_code;
}

int cmd_generate_all(const cli::workspace& ws, const fs::path& out_root, bool want_dot,
                     bool strict) {
    std::vector<product_configuration> sorted = ws.products;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.name < b.name; });

    std::ostringstream table;
    table << "product\tstatus\tdeltas\terrors\twarnings\n";
    int overall = 0;
    for (const auto& config : sorted) {
        product_outcome outcome = run_generate(ws, config, out_root / config.name, want_dot,
                                               strict);
        overall = std::max(overall, outcome.exit_code);
        table << config.name << '\t' << (outcome.exit_code == 0 ? "ok" : "failed") << '\t'
              << config.deltas.size() << '\t';
        if (outcome.errors < 0)
            table << "-\t-\n";
        else
            table << outcome.errors << '\t' << outcome.warnings << '\n';
    }
    std::cout << table.str();
    return overall;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"delta-oriented variability for hierarchical block-diagram models"};
    app.require_subcommand(1);

    std::string models;
    std::string deltas;
    std::string products;
    std::string out;
    std::string product_name;
    bool strict = false;
    bool want_dot = false;

    auto wire_inputs = [&](CLI::App* cmd, bool products_required) {
        cmd->add_option("--models", models, "directory with .dbm model files")->required();
        cmd->add_option("--deltas", deltas, "directory with .dbd delta files");
        auto* p = cmd->add_option("--products", products, ".dbp product file");
        if (products_required) p->required();
    };

    CLI::App* c_check = app.add_subcommand("check", "validate the workspace");
    wire_inputs(c_check, false);
    c_check->add_flag("--strict", strict, "treat warnings as failures");

    CLI::App* c_order = app.add_subcommand("order", "print the application order of a product");
    c_order->add_option("product", product_name, "product name")->required();
    wire_inputs(c_order, true);

    CLI::App* c_generate = app.add_subcommand("generate", "generate one product variant");
    c_generate->add_option("product", product_name, "product name")->required();
    wire_inputs(c_generate, true);
    c_generate->add_option("--out", out, "output directory")->required();
    c_generate->add_flag("--dot", want_dot, "also export Graphviz diagrams");
    c_generate->add_flag("--strict", strict, "treat warnings as failures");

    CLI::App* c_all = app.add_subcommand("generate-all", "generate every product variant");
    wire_inputs(c_all, true);
    c_all->add_option("--out", out, "output root directory")->required();
    c_all->add_flag("--dot", want_dot, "also export Graphviz diagrams");
    c_all->add_flag("--strict", strict, "treat warnings as failures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        std::optional<fs::path> deltas_dir;
        if (!deltas.empty()) deltas_dir = deltas;
        std::optional<fs::path> products_file;
        if (!products.empty()) products_file = products;

        auto ws = cli::load_workspace(models, deltas_dir, products_file);
        if (!ws.ok()) {
            std::cerr << "error: " << ws.error().message << '\n';
            return ws.error().exit_code;
        }

        if (c_check->parsed()) return cmd_check(ws.value(), strict);
        if (c_order->parsed()) return cmd_order(ws.value(), product_name);
        if (c_generate->parsed())
            return cmd_generate(ws.value(), product_name, out, want_dot, strict);
        return cmd_generate_all(ws.value(), out, want_dot, strict);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
