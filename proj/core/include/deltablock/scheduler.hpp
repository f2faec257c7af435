#pragma once

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "deltablock/delta_ast.hpp"
#include "deltablock/diagnostics.hpp"
#include "deltablock/engine.hpp"
#include "deltablock/model.hpp"
#include "deltablock/result.hpp"

namespace deltablock {

/// Truth of an AOC given the set of deltas applied earlier. Deltas not in
/// the product configuration are simply absent from the set, so negated
/// atoms over them hold vacuously.
bool evaluate_aoc(const aoc_expr& e, const std::set<std::string>& applied_before);

struct unknown_delta {
    std::string name;
};

/// Atom that caused a candidate's rejection. `must_precede` is true when
/// the atom's delta was required earlier but absent, false when it was
/// forbidden earlier but present.
struct aoc_blame {
    std::string atom;
    bool must_precede = true;
};

struct unsatisfiable {
    std::vector<std::string> longest_prefix;
    struct rejection {
        std::string candidate;
        aoc_blame blame;
    };
    std::vector<rejection> rejections;
};

using order_failure = std::variant<unknown_delta, unsatisfiable>;

std::string format(const order_failure& f, std::string_view product);

/// Lexicographically smallest application order satisfying every AOC.
/// Complete: reports unsatisfiable only after exhausting the search space,
/// together with the deepest valid prefix and the per-candidate blame.
result<std::vector<std::string>, order_failure> compute_order(const product_configuration& config,
                                                              const delta_library& lib);

struct generation_result {
    model_library variant;
    std::vector<std::string> applied_order;
    std::vector<diagnostic> diagnostics;
};

using generate_failure = std::variant<unknown_delta, unsatisfiable, application_error>;

std::string format(const generate_failure& f, std::string_view product);

/// Orders the configured deltas, folds them over a copy of the core
/// library and validates the outcome. The variant is returned even when
/// it carries diagnostics; only order or application failures abort.
result<generation_result, generate_failure> generate(const model_library& core,
                                                     const delta_library& deltas,
                                                     const product_configuration& config);

} // namespace deltablock
