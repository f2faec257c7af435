#include "deltablock/scheduler.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "deltablock/wellformed.hpp"
#include "detail/overloaded.hpp"

namespace deltablock {

bool evaluate_aoc(const aoc_expr& e, const std::set<std::string>& applied_before) {
    return std::visit(
        detail::overloaded{
            [](const aoc::always&) { return true; },
            [&](const aoc::after& a) { return applied_before.count(a.delta) > 0; },
            [&](const aoc::negation& n) { return !evaluate_aoc(*n.operand, applied_before); },
            [&](const aoc::conjunction& c) {
                return evaluate_aoc(*c.left, applied_before) &&
                       evaluate_aoc(*c.right, applied_before);
            },
            [&](const aoc::disjunction& d) {
                return evaluate_aoc(*d.left, applied_before) ||
                       evaluate_aoc(*d.right, applied_before);
            },
        },
        e.node);
}

namespace {

/// Picks the atom responsible for `e` evaluating to !want. `want` flips
/// under negation, so at the atom it tells whether the delta had to be
/// applied earlier (true) or must not have been (false).
aoc_blame blame(const aoc_expr& e, const std::set<std::string>& applied, bool want) {
    return std::visit(
        detail::overloaded{
            [&](const aoc::always&) {
                assert(false && "constant constraint cannot fail");
                return aoc_blame{"", want};
            },
            [&](const aoc::after& a) { return aoc_blame{a.delta, want}; },
            [&](const aoc::negation& n) { return blame(*n.operand, applied, !want); },
            [&](const aoc::conjunction& c) {
                if (want)
                    return !evaluate_aoc(*c.left, applied) ? blame(*c.left, applied, true)
                                                           : blame(*c.right, applied, true);
                return blame(*c.left, applied, false);
            },
            [&](const aoc::disjunction& d) {
                if (want) return blame(*d.left, applied, true);
                return evaluate_aoc(*d.left, applied) ? blame(*d.left, applied, false)
                                                      : blame(*d.right, applied, false);
            },
        },
        e.node);
}

struct order_search {
    const delta_library& lib;
    std::vector<std::string> order;
    std::set<std::string> applied;
    std::vector<std::string> remaining;

    bool have_deadend = false;
    std::vector<std::string> best_prefix;
    std::vector<unsatisfiable::rejection> best_rejections;

    bool run() {
        if (remaining.empty()) return true;
        bool any_valid = false;
        std::vector<unsatisfiable::rejection> rejections;
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            std::string cand = remaining[i];
            const delta* d = lib.find(cand);
            if (!evaluate_aoc(d->aoc, applied)) {
                rejections.push_back({cand, blame(d->aoc, applied, true)});
                continue;
            }
            any_valid = true;
            remaining.erase(remaining.begin() + i);
            order.push_back(cand);
            applied.insert(cand);
            if (run()) return true;
            applied.erase(cand);
            order.pop_back();
            remaining.insert(remaining.begin() + i, cand);
        }
        if (!any_valid && (!have_deadend || order.size() > best_prefix.size())) {
            have_deadend = true;
            best_prefix = order;
            best_rejections = std::move(rejections);
        }
        return false;
    }
};

} // namespace

result<std::vector<std::string>, order_failure> compute_order(const product_configuration& config,
                                                              const delta_library& lib) {
    for (const auto& name : config.deltas)
        if (lib.find(name) == nullptr) return order_failure{unknown_delta{name}};

    std::vector<std::string> names = config.deltas;
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());

    order_search search{lib, {}, {}, std::move(names)};
    if (search.run()) return std::move(search.order);
    return order_failure{unsatisfiable{std::move(search.best_prefix),
                                       std::move(search.best_rejections)}};
}

static std::string describe_blame(const aoc_blame& b) {
    if (b.must_precede) return "requires 'after " + b.atom + "'";
    return "violates '!after " + b.atom + "'";
}

std::string format(const order_failure& f, std::string_view product) {
    std::ostringstream out;
    out << "error: product '" << product << "': ";
    std::visit(detail::overloaded{
                   [&](const unknown_delta& u) { out << "unknown delta '" << u.name << "'"; },
                   [&](const unsatisfiable& u) {
                       out << "no valid application order\n";
                       out << "  longest valid prefix: ";
                       if (u.longest_prefix.empty()) {
                           out << "(empty)";
                       } else {
                           for (std::size_t i = 0; i < u.longest_prefix.size(); ++i) {
                               if (i > 0) out << ", ";
                               out << u.longest_prefix[i];
                           }
                       }
                       out << "\n  rejected next candidates:";
                       for (const auto& r : u.rejections)
                           out << "\n    " << r.candidate << ": " << describe_blame(r.blame);
                   },
               },
               f);
    return out.str();
}

std::string format(const generate_failure& f, std::string_view product) {
    return std::visit(
        detail::overloaded{
            [&](const unknown_delta& u) { return format(order_failure{u}, product); },
            [&](const unsatisfiable& u) { return format(order_failure{u}, product); },
            [&](const application_error& e) {
                return "error: product '" + std::string{product} + "': " + format(e);
            },
        },
        f);
}

result<generation_result, generate_failure> generate(const model_library& core,
                                                     const delta_library& deltas,
                                                     const product_configuration& config) {
    auto order = compute_order(config, deltas);
    if (!order.ok())
        return std::visit([](auto f) { return generate_failure{std::move(f)}; },
                          std::move(order).error());

    model_library variant = core;
    for (const auto& name : order.value()) {
        auto next = apply_delta(variant, *deltas.find(name));
        if (!next.ok()) return generate_failure{std::move(next).error()};
        variant = std::move(next).value();
    }
    generation_result res{std::move(variant), std::move(order).value(), {}};
    res.diagnostics = check_wellformed(res.variant);
    return res;
}

} // namespace deltablock
