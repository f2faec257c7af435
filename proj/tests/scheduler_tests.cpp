#include <doctest.h>

#include <filesystem>
#include <random>
#include <set>

#include "deltablock/parse.hpp"
#include "deltablock/scheduler.hpp"
#include "deltablock/wellformed.hpp"
#include "support/builders.hpp"
#include "support/generators.hpp"
#include "support/io.hpp"
#include "support/oracle.hpp"

using namespace deltablock;
using testutil::single_block_delta;

namespace {

struct braking_workspace {
    model_library core;
    delta_library deltas;
    std::vector<product_configuration> products;
};

const braking_workspace& braking() {
    static braking_workspace ws = [] {
        braking_workspace out;
        auto core =
            parse_library(testutil::slurp(testutil::fixtures_root() / "models/braking.dbm"));
        REQUIRE(core.ok());
        out.core = std::move(core).value();
        for (const auto& entry : std::filesystem::directory_iterator(
                 testutil::fixtures_root() / "deltas")) {
            auto parsed = parse_deltas(testutil::slurp(entry.path()));
            REQUIRE(parsed.ok());
            for (auto& d : parsed.value()) out.deltas.deltas.push_back(std::move(d));
        }
        auto products =
            parse_products(testutil::slurp(testutil::fixtures_root() / "products/braking.dbp"));
        REQUIRE(products.ok());
        out.products = std::move(products).value();
        return out;
    }();
    return ws;
}

const product_configuration& product(std::string_view name) {
    for (const auto& p : braking().products)
        if (p.name == name) return p;
    REQUIRE(false);
    static product_configuration none;
    return none;
}

void collect_atoms(const aoc_expr& e, std::set<std::string>& out) {
    if (const auto* a = std::get_if<aoc::after>(&e.node)) {
        out.insert(a->delta);
    } else if (const auto* n = std::get_if<aoc::negation>(&e.node)) {
        collect_atoms(*n->operand, out);
    } else if (const auto* c = std::get_if<aoc::conjunction>(&e.node)) {
        collect_atoms(*c->left, out);
        collect_atoms(*c->right, out);
    } else if (const auto* d = std::get_if<aoc::disjunction>(&e.node)) {
        collect_atoms(*d->left, out);
        collect_atoms(*d->right, out);
    }
}

delta_op harmless_op(const std::string& suffix) {
    return delta_op{add_port{port_direction::in, "p_" + suffix}};
}

} // namespace

TEST_CASE("evaluate_aoc follows the connective semantics") {
    std::set<std::string> applied{"A", "B"};
    CHECK(evaluate_aoc(aoc_always(), {}));
    CHECK(evaluate_aoc(aoc_after("A"), applied));
    CHECK(!evaluate_aoc(aoc_after("C"), applied));
    CHECK(evaluate_aoc(aoc_and(aoc_after("A"), aoc_after("B")), applied));
    CHECK(!evaluate_aoc(aoc_and(aoc_after("A"), aoc_after("C")), applied));
    CHECK(evaluate_aoc(aoc_or(aoc_after("C"), aoc_after("B")), applied));
    CHECK(!evaluate_aoc(aoc_or(aoc_after("C"), aoc_after("D")), applied));
    CHECK(evaluate_aoc(aoc_not(aoc_after("C")), applied));
    CHECK(!evaluate_aoc(aoc_not(aoc_after("A")), applied));
}

TEST_CASE("negated atoms over absent deltas hold vacuously") {
    CHECK(evaluate_aoc(aoc_not(aoc_after("NotInProduct")), {}));
    CHECK(evaluate_aoc(aoc_and(aoc_not(aoc_after("X")), aoc_not(aoc_after("Y"))), {"Z"}));
}

TEST_CASE("evaluation only depends on the atoms of the expression") {
    std::mt19937 rng{771240};
    std::vector<std::string> names{"d0", "d1", "d2", "d3", "d4", "d5"};
    for (int i = 0; i < 300; ++i) {
        aoc_expr e = testutil::random_aoc(rng, names, 3);
        std::set<std::string> atoms;
        collect_atoms(e, atoms);
        std::set<std::string> applied;
        for (const auto& n : names)
            if (testutil::rand_int(rng, 0, 1)) applied.insert(n);
        applied.insert("unrelated" + std::to_string(i));
        std::set<std::string> trimmed;
        for (const auto& a : applied)
            if (atoms.count(a)) trimmed.insert(a);
        CHECK(evaluate_aoc(e, applied) == evaluate_aoc(e, trimmed));
    }
}

TEST_CASE("fixture products order as computed by hand") {
    auto expect = [&](std::string_view name, std::vector<std::string> want) {
        auto got = compute_order(product(name), braking().deltas);
        REQUIRE(got.ok());
        CHECK(got.value() == want);
    };
    expect("BasicBS", {});
    expect("BSwithABS", {"DABS"});
    expect("BSwithABSandTC", {"DABS", "DTC_pre", "DTC"});
    expect("BSwithESC", {"DABS", "DTC_pre", "DTC", "DESC"});
    expect("BSwithESCandFWD", {"DABS", "DFWD_pre", "DFWD", "DTC_pre", "DTC", "DESC"});
    expect("BasicBikeBS", {"DTW_pre", "DTW", "DTW_post"});
    expect("BikeBSwithABS", {"DABS", "DTW_pre", "DTW", "DTW_post"});
}

TEST_CASE("unconstrained deltas are ordered lexicographically") {
    product_configuration config{"P", {"DTC_pre", "DABS"}};
    auto got = compute_order(config, braking().deltas);
    REQUIRE(got.ok());
    CHECK(got.value() == std::vector<std::string>{"DABS", "DTC_pre"});
}

TEST_CASE("duplicate delta names in a configuration collapse") {
    product_configuration config{"P", {"DABS", "DABS"}};
    auto got = compute_order(config, braking().deltas);
    REQUIRE(got.ok());
    CHECK(got.value() == std::vector<std::string>{"DABS"});
}

TEST_CASE("the solver agrees with brute force on the bike products") {
    const auto& config = product("BikeBSwithABS");
    auto valid = oracle::all_valid_orders(config.deltas, braking().deltas);
    REQUIRE(!valid.empty());
    for (const auto& order : valid) {
        auto abs = std::find(order.begin(), order.end(), "DABS");
        auto post = std::find(order.begin(), order.end(), "DTW_post");
        CHECK(abs < post);
    }
    auto got = compute_order(config, braking().deltas);
    REQUIRE(got.ok());
    CHECK(got.value() == valid.front());
}

TEST_CASE("unknown deltas surface in declaration order") {
    product_configuration config{"P", {"DABS", "Ghost2", "Ghost1"}};
    auto got = compute_order(config, braking().deltas);
    REQUIRE(!got.ok());
    const auto* u = std::get_if<unknown_delta>(&got.error());
    REQUIRE(u != nullptr);
    CHECK(u->name == "Ghost2");
    CHECK(format(got.error(), "P") == "error: product 'P': unknown delta 'Ghost2'");
}

TEST_CASE("cyclic constraints report an empty prefix with both rejections") {
    delta_library lib;
    lib.deltas.push_back(single_block_delta("LoopA", aoc_after("LoopB"), {harmless_op("a")}));
    lib.deltas.push_back(single_block_delta("LoopB", aoc_after("LoopA"), {harmless_op("b")}));
    product_configuration config{"Loop", {"LoopA", "LoopB"}};
    auto got = compute_order(config, lib);
    REQUIRE(!got.ok());
    const auto* u = std::get_if<unsatisfiable>(&got.error());
    REQUIRE(u != nullptr);
    CHECK(u->longest_prefix.empty());
    REQUIRE(u->rejections.size() == 2);
    CHECK(u->rejections[0].candidate == "LoopA");
    CHECK(u->rejections[0].blame.atom == "LoopB");
    CHECK(u->rejections[0].blame.must_precede);
    CHECK(u->rejections[1].candidate == "LoopB");
    CHECK(u->rejections[1].blame.atom == "LoopA");
    CHECK(format(got.error(), "Loop") ==
          "error: product 'Loop': no valid application order\n"
          "  longest valid prefix: (empty)\n"
          "  rejected next candidates:\n"
          "    LoopA: requires 'after LoopB'\n"
          "    LoopB: requires 'after LoopA'");
}

TEST_CASE("contradictions blame the violated negation") {
    delta_library lib;
    lib.deltas.push_back(single_block_delta("A", aoc_always(), {harmless_op("a")}));
    lib.deltas.push_back(single_block_delta(
        "B", aoc_and(aoc_after("A"), aoc_not(aoc_after("A"))), {harmless_op("b")}));
    product_configuration config{"P", {"A", "B"}};
    auto got = compute_order(config, lib);
    REQUIRE(!got.ok());
    const auto* u = std::get_if<unsatisfiable>(&got.error());
    REQUIRE(u != nullptr);
    CHECK(u->longest_prefix == std::vector<std::string>{"A"});
    REQUIRE(u->rejections.size() == 1);
    CHECK(u->rejections[0].candidate == "B");
    CHECK(u->rejections[0].blame.atom == "A");
    CHECK(!u->rejections[0].blame.must_precede);
    CHECK(format(got.error(), "P") ==
          "error: product 'P': no valid application order\n"
          "  longest valid prefix: A\n"
          "  rejected next candidates:\n"
          "    B: violates '!after A'");
}

TEST_CASE("search keeps looking past early deadends") {
    // Lexicographic greed walks into the [d0] subtree first and finds it
    // barren; success requires backing out and starting with d2.
    delta_library lib;
    lib.deltas.push_back(single_block_delta("d0", aoc_always(), {harmless_op("a")}));
    lib.deltas.push_back(single_block_delta("d1", aoc_after("d2"), {harmless_op("b")}));
    lib.deltas.push_back(
        single_block_delta("d2", aoc_not(aoc_after("d0")), {harmless_op("c")}));
    product_configuration config{"P", {"d0", "d1", "d2"}};
    auto got = compute_order(config, lib);
    REQUIRE(got.ok());
    CHECK(got.value() == std::vector<std::string>{"d2", "d0", "d1"});
    CHECK(oracle::first_valid_order(config.deltas, lib) == got.value());
}

TEST_CASE("random configurations match the brute-force oracle") {
    std::mt19937 rng{20260813};
    int unsat_seen = 0;
    for (int round = 0; round < 150; ++round) {
        auto lib = testutil::random_delta_library(rng, testutil::rand_int(rng, 1, 5));
        std::vector<std::string> names;
        for (const auto& d : lib.deltas) names.push_back(d.name);
        product_configuration config{"P", names};

        auto expected = oracle::first_valid_order(names, lib);
        auto got = compute_order(config, lib);
        if (expected.has_value()) {
            REQUIRE(got.ok());
            CHECK(got.value() == *expected);
            CHECK(oracle::order_valid(got.value(), lib));
        } else {
            ++unsat_seen;
            REQUIRE(!got.ok());
            const auto* u = std::get_if<unsatisfiable>(&got.error());
            REQUIRE(u != nullptr);
            CHECK(oracle::order_valid(u->longest_prefix, lib));
            for (const auto& r : u->rejections) {
                auto extended = u->longest_prefix;
                extended.push_back(r.candidate);
                CHECK(!oracle::order_valid(extended, lib));
            }
        }
    }
    CHECK(unsat_seen > 0);
}

TEST_CASE("generating the empty product returns the core untouched") {
    auto res = generate(braking().core, braking().deltas, product("BasicBS"));
    REQUIRE(res.ok());
    CHECK(res.value().variant == braking().core);
    CHECK(res.value().applied_order.empty());
    CHECK(res.value().diagnostics.empty());
}

TEST_CASE("generating BSwithABS produces the ABS variant") {
    auto res = generate(braking().core, braking().deltas, product("BSwithABS"));
    REQUIRE(res.ok());
    CHECK(res.value().applied_order == std::vector<std::string>{"DABS"});
    CHECK(res.value().diagnostics.empty());
    const context& bs = res.value().variant.find("BrakingSystem")->body;
    CHECK(bs.in_ports.size() == 5);
    CHECK(bs.connections.size() == 13);
    CHECK(bs.find_block("brakefunction")->as_model_ref()->ref_model == "ABS");
}

TEST_CASE("generating BasicBikeBS shrinks every interface") {
    auto res = generate(braking().core, braking().deltas, product("BasicBikeBS"));
    REQUIRE(res.ok());
    CHECK(res.value().diagnostics.empty());
    const model_library& v = res.value().variant;
    const context& bs = v.find("BrakingSystem")->body;
    CHECK(bs.in_ports == std::vector<std::string>{"brake", "brakeRear"});
    CHECK(bs.out_ports == std::vector<std::string>{"brakePressure1", "brakePressure3"});
    CHECK(bs.connections.size() == 6);
    const context& monitor = bs.find_block("monitor")->as_subsystem()->body;
    CHECK(monitor.in_ports == std::vector<std::string>{"p1", "p3"});
    const context& pc = v.find("PressureCalculator")->body;
    CHECK(pc.in_ports == std::vector<std::string>{"brake", "brakeRear"});
    CHECK(pc.out_ports == std::vector<std::string>{"brakePressure1", "brakePressure3"});
}

TEST_CASE("every fixture product generates without diagnostics") {
    for (const auto& config : braking().products) {
        CAPTURE(config.name);
        auto res = generate(braking().core, braking().deltas, config);
        REQUIRE(res.ok());
        CHECK(res.value().diagnostics.empty());
        CHECK(check_wellformed(res.value().variant).empty());
    }
}

TEST_CASE("generation keeps validation findings of the variant") {
    auto core = testutil::base_library();
    delta_library lib;
    lib.deltas.push_back(single_block_delta("DLonely", aoc_always(),
                                            {delta_op{add_port{port_direction::in, "lonely"}}}));
    auto res = generate(core, lib, product_configuration{"P", {"DLonely"}});
    REQUIRE(res.ok());
    REQUIRE(res.value().diagnostics.size() == 1);
    CHECK(res.value().diagnostics[0].code == diag_code::unconnected_port);
    CHECK(res.value().diagnostics[0].location.element == "lonely");
}

TEST_CASE("generation propagates order failures") {
    auto res = generate(braking().core, braking().deltas,
                        product_configuration{"P", {"Ghost"}});
    REQUIRE(!res.ok());
    const auto* u = std::get_if<unknown_delta>(&res.error());
    REQUIRE(u != nullptr);
    CHECK(u->name == "Ghost");
    CHECK(format(res.error(), "P") == "error: product 'P': unknown delta 'Ghost'");
}

TEST_CASE("generation propagates application failures") {
    auto core = testutil::base_library();
    delta_library lib;
    lib.deltas.push_back(single_block_delta("DBad", aoc_always(),
                                            {delta_op{add_port{port_direction::in, "a"}}}));
    auto res = generate(core, lib, product_configuration{"P", {"DBad"}});
    REQUIRE(!res.ok());
    const auto* e = std::get_if<application_error>(&res.error());
    REQUIRE(e != nullptr);
    CHECK(e->code == apply_error_code::duplicate_name);
    CHECK(e->delta == "DBad");
    CHECK(format(res.error(), "P") ==
          "error: product 'P': delta 'DBad': op 0.0: DuplicateName: " + e->detail);
}

TEST_CASE("generation never mutates the core library") {
    auto before = braking().core;
    auto ok = generate(braking().core, braking().deltas, product("BikeBSwithABS"));
    REQUIRE(ok.ok());
    auto bad = generate(braking().core, braking().deltas, product_configuration{"P", {"Ghost"}});
    REQUIRE(!bad.ok());
    CHECK(braking().core == before);
}
