#include "workspace.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "deltablock/parse.hpp"

namespace deltablock::cli {

namespace {

result<std::string, load_error> slurp(const std::filesystem::path& path) {
    std::ifstream in{path, std::ios::binary};
    if (!in) return load_error{2, "cannot read '" + path.string() + "'"};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

result<std::vector<std::filesystem::path>, load_error> files_with_extension(
    const std::filesystem::path& dir, std::string_view ext) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec))
        return load_error{2, "'" + dir.string() + "' is not a directory"};
    std::vector<std::filesystem::path> out;
    for (const auto& entry : std::filesystem::directory_iterator{dir, ec}) {
        if (entry.is_regular_file() && entry.path().extension() == ext)
            out.push_back(entry.path());
    }
    if (ec) return load_error{2, "cannot list '" + dir.string() + "': " + ec.message()};
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
    return out;
}

load_error at_file(const std::filesystem::path& path, const parse_error& e) {
    return load_error{2, path.string() + ":" + format(e)};
}

} // namespace

result<workspace, load_error> load_workspace(
    const std::filesystem::path& models_dir,
    const std::optional<std::filesystem::path>& deltas_dir,
    const std::optional<std::filesystem::path>& products_file) {
    workspace ws;

    auto model_files = files_with_extension(models_dir, ".dbm");
    if (!model_files.ok()) return std::move(model_files).error();
    for (const auto& path : model_files.value()) {
        auto text = slurp(path);
        if (!text.ok()) return std::move(text).error();
        auto lib = parse_library(text.value());
        if (!lib.ok()) return at_file(path, lib.error());
        for (auto& m : lib.value().models) {
            if (ws.core.find(m.name))
                return load_error{2, path.string() + ": model '" + m.name +
                                         "' is already defined in another file"};
            ws.core.models.push_back(std::move(m));
        }
    }

    if (deltas_dir) {
        auto delta_files = files_with_extension(*deltas_dir, ".dbd");
        if (!delta_files.ok()) return std::move(delta_files).error();
        for (const auto& path : delta_files.value()) {
            auto text = slurp(path);
            if (!text.ok()) return std::move(text).error();
            auto parsed = parse_deltas(text.value());
            if (!parsed.ok()) return at_file(path, parsed.error());
            for (auto& d : parsed.value()) {
                if (ws.deltas.find(d.name))
                    return load_error{2, path.string() + ": delta '" + d.name +
                                             "' is already defined in another file"};
                ws.deltas.deltas.push_back(std::move(d));
            }
        }
    }

    if (products_file) {
        auto text = slurp(*products_file);
        if (!text.ok()) return std::move(text).error();
        auto parsed = parse_products(text.value());
        if (!parsed.ok()) return at_file(*products_file, parsed.error());
        ws.products = std::move(parsed).value();
    }

    return ws;
}

const product_configuration* find_product(const workspace& ws, std::string_view name) {
    for (const auto& p : ws.products)
        if (p.name == name) return &p;
    return nullptr;
}

} // namespace deltablock::cli
