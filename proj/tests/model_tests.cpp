#include <doctest.h>

#include "deltablock/diagnostics.hpp"
#include "deltablock/render.hpp"
#include "deltablock/wellformed.hpp"
#include "support/builders.hpp"

using namespace deltablock;

namespace {

std::vector<diagnostic> of_code(const std::vector<diagnostic>& diags, diag_code code) {
    std::vector<diagnostic> out;
    for (const auto& d : diags)
        if (d.code == code) out.push_back(d);
    return out;
}

} // namespace

TEST_CASE("resolve_interface exposes subsystem boundary ports") {
    auto lib = testutil::base_library();
    const block* s = lib.find("Main")->body.find_block("s");
    auto iface = resolve_interface(*s, lib);
    REQUIRE(iface.ok());
    CHECK(iface.value().in_ports == std::set<std::string>{"sp"});
    CHECK(iface.value().out_ports.empty());
}

TEST_CASE("resolve_interface follows model references") {
    auto lib = testutil::base_library();
    const block* u = lib.find("Main")->body.find_block("u");
    auto iface = resolve_interface(*u, lib);
    REQUIRE(iface.ok());
    CHECK(iface.value().in_ports == std::set<std::string>{"x"});
    CHECK(iface.value().out_ports == std::set<std::string>{"y"});
}

TEST_CASE("resolve_interface fails on an undefined model") {
    auto lib = testutil::base_library();
    block ghost = make_model_ref("g", "Ghost");
    auto iface = resolve_interface(ghost, lib);
    REQUIRE(!iface.ok());
    CHECK(iface.error().ref_model == "Ghost");
}

TEST_CASE("block_interface inclusion is per direction") {
    block_interface big{{"a", "b"}, {"c"}};
    block_interface small{{"a"}, {"c"}};
    CHECK(big.includes(small));
    CHECK(big.includes(big));
    CHECK(!small.includes(big));
    CHECK(!block_interface{{"a"}, {}}.includes(block_interface{{}, {"a"}}));
}

TEST_CASE("lookup_context walks nested subsystems") {
    auto lib = testutil::base_library();

    std::vector<std::string> empty;
    auto root = lookup_context(lib, "Main", empty);
    REQUIRE(root.ok());
    CHECK(root.value() == &lib.find("Main")->body);

    std::vector<std::string> to_s{"s"};
    auto sub = lookup_context(lib, "Main", to_s);
    REQUIRE(sub.ok());
    CHECK(sub.value()->in_ports == std::vector<std::string>{"sp"});

    std::vector<std::string> to_u{"u"};
    CHECK(!lookup_context(lib, "Main", to_u).ok());
    std::vector<std::string> to_ghost{"ghost"};
    CHECK(!lookup_context(lib, "Main", to_ghost).ok());
    CHECK(!lookup_context(lib, "Ghost", empty).ok());
}

TEST_CASE("check_wellformed accepts the base scenario") {
    auto diags = check_wellformed(testutil::base_library());
    CHECK(diags.empty());
}

TEST_CASE("duplicate names are reported once per name") {
    model_library lib;
    context ctx;
    ctx.in_ports = {"x", "x"};
    ctx.out_ports = {"x"};
    ctx.connections.push_back({boundary("x"), boundary("x")});
    lib.models.push_back(model{"M", ctx});
    auto dups = of_code(check_wellformed(lib), diag_code::duplicate_name);
    REQUIRE(dups.size() == 1);
    CHECK(dups[0].location.element == "x");
    CHECK(dups[0].message == "name 'x' is used 3 times in one context");
}

TEST_CASE("dangling and misdirected endpoints") {
    model_library lib;
    context ctx;
    ctx.in_ports = {"a"};
    ctx.out_ports = {"b"};
    ctx.connections.push_back({boundary("b"), boundary("a")});
    ctx.connections.push_back({boundary("ghost"), boundary("b")});
    lib.models.push_back(model{"M", ctx});
    auto diags = check_wellformed(lib);

    auto dangling = of_code(diags, diag_code::dangling_endpoint);
    REQUIRE(dangling.size() == 1);
    CHECK(dangling[0].location.element == "ghost");

    auto direction = of_code(diags, diag_code::direction_error);
    REQUIRE(direction.size() == 2);
    CHECK(direction[0].location.element == "a");
    CHECK(direction[1].location.element == "b");
}

TEST_CASE("two connections driving one target") {
    auto lib = testutil::base_library();
    lib.find("Main")->body.connections.push_back({child_port("u", "y"), child_port("s", "sp")});
    auto occupied = of_code(check_wellformed(lib), diag_code::target_occupied);
    REQUIRE(occupied.size() == 1);
    CHECK(occupied[0].location.element == "s.sp");
    CHECK(occupied[0].message.find("2 connections") != std::string::npos);
}

TEST_CASE("unknown model reference") {
    model_library lib;
    context ctx;
    ctx.blocks.push_back(make_model_ref("u", "Ghost"));
    ctx.connections.push_back({child_port("u", "y"), child_port("u", "x")});
    lib.models.push_back(model{"M", ctx});
    auto diags = check_wellformed(lib);
    auto unknown = of_code(diags, diag_code::unknown_model);
    REQUIRE(unknown.size() == 1);
    CHECK(unknown[0].location.element == "u");
    CHECK(of_code(diags, diag_code::dangling_endpoint).empty());
}

TEST_CASE("reference cycles name every model on the cycle") {
    model_library lib;
    context x_ctx;
    x_ctx.blocks.push_back(make_model_ref("toY", "Y"));
    context y_ctx;
    y_ctx.blocks.push_back(make_model_ref("toX", "X"));
    lib.models.push_back(model{"X", x_ctx});
    lib.models.push_back(model{"Y", y_ctx});
    auto cycles = of_code(check_wellformed(lib), diag_code::reference_cycle);
    REQUIRE(cycles.size() == 2);
    CHECK(cycles[0].location.model == "X");
    CHECK(cycles[0].message == "model-reference cycle: X -> Y -> X");
    CHECK(cycles[1].location.model == "Y");
    CHECK(cycles[1].message == "model-reference cycle: Y -> X -> Y");
}

TEST_CASE("self reference is a cycle") {
    model_library lib;
    context ctx;
    ctx.blocks.push_back(make_model_ref("me", "M"));
    lib.models.push_back(model{"M", ctx});
    auto cycles = of_code(check_wellformed(lib), diag_code::reference_cycle);
    REQUIRE(cycles.size() == 1);
    CHECK(cycles[0].message == "model-reference cycle: M -> M");
}

TEST_CASE("unconnected ports warn only in non-empty contexts") {
    model_library lib;
    context unit;
    unit.in_ports = {"x"};
    unit.out_ports = {"y"};
    lib.models.push_back(model{"Unit", unit});

    context ctx;
    ctx.in_ports = {"a", "lonely"};
    ctx.blocks.push_back(make_model_ref("u", "Unit"));
    ctx.connections.push_back({boundary("a"), child_port("u", "x")});
    lib.models.push_back(model{"M", ctx});

    auto diags = check_wellformed(lib);
    for (const auto& d : diags) CHECK(d.level() == severity::warning);
    auto warnings = of_code(diags, diag_code::unconnected_port);
    REQUIRE(warnings.size() == 2);
    CHECK(warnings[0].location.element == "lonely");
    CHECK(warnings[1].location.element == "u.y");
}

TEST_CASE("diagnostics come out sorted and reproducibly") {
    model_library lib;
    context bad;
    bad.in_ports = {"p", "p"};
    bad.connections.push_back({boundary("ghost"), boundary("p")});
    context nested;
    nested.out_ports = {"q", "q"};
    bad.blocks.push_back(make_subsystem("inner", nested));
    lib.models.push_back(model{"B", bad});
    lib.models.push_back(model{"A", context{}});

    auto diags = check_wellformed(lib);
    REQUIRE(!diags.empty());
    for (std::size_t i = 1; i < diags.size(); ++i) {
        auto key = [](const diagnostic& d) {
            return std::tuple{d.location.model, d.location.path, d.code, d.location.element};
        };
        CHECK(key(diags[i - 1]) <= key(diags[i]));
    }
    CHECK(check_wellformed(lib) == diags);
}

TEST_CASE("diagnostic formatting") {
    diagnostic d{diag_code::target_occupied, {"M", {"s1", "s2"}, "u.x"}, "target is driven twice"};
    CHECK(format(d) == "error TargetOccupied at M/s1/s2 [u.x]: target is driven twice");
    diagnostic w{diag_code::unconnected_port, {"M", {}, "p"}, "port 'p' is not connected"};
    CHECK(format(w) == "warning UnconnectedPort at M [p]: port 'p' is not connected");
}

TEST_CASE("canonical rendering of a small library") {
    auto lib = testutil::base_library();
    CHECK(render_library(lib) ==
          "model Main {\n"
          "  in a\n"
          "  out b\n"
          "  mref u : Unit\n"
          "  subsystem s {\n"
          "    in sp\n"
          "  }\n"
          "  connect a -> u.x\n"
          "  connect u.y -> b\n"
          "  connect a -> s.sp\n"
          "}\n"
          "\n"
          "model Unit {\n"
          "  in x\n"
          "  out y\n"
          "}\n");
}

TEST_CASE("structural equality is value-based") {
    auto a = testutil::base_library();
    auto b = testutil::base_library();
    CHECK(a == b);
    b.find("Main")->body.in_ports.push_back("extra");
    CHECK(a != b);
}
