#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "deltablock/delta_ast.hpp"
#include "deltablock/model.hpp"
#include "deltablock/result.hpp"

namespace deltablock {

struct source_pos {
    int line = 1;
    int column = 1;

    friend bool operator==(const source_pos&, const source_pos&) = default;
};

enum class parse_error_kind {
    syntax,            ///< token-level or grammar-level failure
    duplicate_name,    ///< name reused within one naming scope
    empty_delta,       ///< delta without any modify block
    duplicate_product, ///< product name declared twice in one file
};

struct parse_error {
    parse_error_kind kind;
    source_pos pos;
    std::string message;
};

/// "3:14: error: expected identifier, found '{'"
std::string format(const parse_error& e);

/// Parses a model file: zero or more model definitions.
result<model_library, parse_error> parse_library(std::string_view text);

/// Parses a delta file holding exactly one delta.
result<delta, parse_error> parse_delta(std::string_view text);

/// Parses a delta file holding any number of deltas, names unique per file.
result<std::vector<delta>, parse_error> parse_deltas(std::string_view text);

/// Parses a product file: zero or more product configurations.
result<std::vector<product_configuration>, parse_error> parse_products(std::string_view text);

} // namespace deltablock
