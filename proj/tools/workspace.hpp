#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "deltablock/delta_ast.hpp"
#include "deltablock/model.hpp"
#include "deltablock/result.hpp"

namespace deltablock::cli {

struct workspace {
    model_library core;
    delta_library deltas;
    std::vector<product_configuration> products;
};

struct load_error {
    int exit_code;
    std::string message;
};

/// Reads every .dbm file of the models directory, every .dbd file of the
/// deltas directory and one .dbp products file. Files are visited in
/// filename order; names must be unique across the whole workspace.
result<workspace, load_error> load_workspace(
    const std::filesystem::path& models_dir,
    const std::optional<std::filesystem::path>& deltas_dir,
    const std::optional<std::filesystem::path>& products_file);

const product_configuration* find_product(const workspace& ws, std::string_view name);

} // namespace deltablock::cli
