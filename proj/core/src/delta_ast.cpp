#include "deltablock/delta_ast.hpp"

namespace deltablock {

aoc_expr aoc_always() { return aoc_expr{aoc::always{}}; }

aoc_expr aoc_after(std::string delta) { return aoc_expr{aoc::after{std::move(delta)}}; }

aoc_expr aoc_not(aoc_expr e) { return aoc_expr{aoc::negation{box<aoc_expr>{std::move(e)}}}; }

aoc_expr aoc_and(aoc_expr left, aoc_expr right) {
    return aoc_expr{aoc::conjunction{box<aoc_expr>{std::move(left)}, box<aoc_expr>{std::move(right)}}};
}

aoc_expr aoc_or(aoc_expr left, aoc_expr right) {
    return aoc_expr{aoc::disjunction{box<aoc_expr>{std::move(left)}, box<aoc_expr>{std::move(right)}}};
}

const delta* delta_library::find(std::string_view name) const {
    for (const auto& d : deltas)
        if (d.name == name) return &d;
    return nullptr;
}

} // namespace deltablock
