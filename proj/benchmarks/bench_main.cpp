#include <benchmark/benchmark.h>

#include <string>

#include "deltablock/engine.hpp"
#include "deltablock/parse.hpp"
#include "deltablock/render.hpp"
#include "deltablock/scheduler.hpp"
#include "deltablock/wellformed.hpp"

using namespace deltablock;

namespace {

/// Main model with a chain of `n` unit blocks wired front to back.
model_library chain_library(int n) {
    model_library lib;
    context unit;
    unit.in_ports.push_back("x");
    unit.out_ports.push_back("y");
    lib.models.push_back(model{"Unit", unit});

    context main_ctx;
    main_ctx.in_ports.push_back("src");
    main_ctx.out_ports.push_back("snk");
    for (int i = 0; i < n; ++i)
        main_ctx.blocks.push_back(make_model_ref("b" + std::to_string(i), "Unit"));
    main_ctx.connections.push_back({boundary("src"), child_port("b0", "x")});
    for (int i = 0; i + 1 < n; ++i)
        main_ctx.connections.push_back({child_port("b" + std::to_string(i), "y"),
                                        child_port("b" + std::to_string(i + 1), "x")});
    main_ctx.connections.push_back(
        {child_port("b" + std::to_string(n - 1), "y"), boundary("snk")});
    lib.models.push_back(model{"Main", std::move(main_ctx)});
    return lib;
}

/// Delta chain forcing the scheduler into the reverse of lexicographic
/// order, the worst case for the backtracking search.
delta_library reverse_chain_deltas(int n) {
    delta_library lib;
    for (int i = 0; i < n; ++i) {
        delta d;
        d.name = "d" + std::to_string(i);
        if (i + 1 < n) d.aoc = aoc_after("d" + std::to_string(i + 1));
        d.modifications.push_back(modify_block{
            context_kind::model, "Main", {delta_op{add_port{port_direction::in, "p" + d.name}}}});
        lib.deltas.push_back(std::move(d));
    }
    return lib;
}

void BM_parse_library(benchmark::State& state) {
    std::string text = render_library(chain_library(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        auto lib = parse_library(text);
        benchmark::DoNotOptimize(lib);
    }
}
BENCHMARK(BM_parse_library)->Arg(16)->Arg(128)->Arg(1024);

void BM_render_library(benchmark::State& state) {
    model_library lib = chain_library(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        std::string text = render_library(lib);
        benchmark::DoNotOptimize(text);
    }
}
BENCHMARK(BM_render_library)->Arg(16)->Arg(128)->Arg(1024);

void BM_check_wellformed(benchmark::State& state) {
    model_library lib = chain_library(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto diags = check_wellformed(lib);
        benchmark::DoNotOptimize(diags);
    }
}
BENCHMARK(BM_check_wellformed)->Arg(16)->Arg(128);

void BM_apply_delta(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    model_library lib = chain_library(n);
    delta d{"widen", aoc_always(), {}};
    std::vector<delta_op> ops;
    ops.push_back(delta_op{add_port{port_direction::in, "extra"}});
    ops.push_back(delta_op{add_model_ref{"tap", "Unit"}});
    ops.push_back(delta_op{add_connection{{boundary("extra"), child_port("tap", "x")}}});
    d.modifications.push_back(modify_block{context_kind::model, "Main", std::move(ops)});
    for (auto _ : state) {
        auto next = apply_delta(lib, d);
        benchmark::DoNotOptimize(next);
    }
}
BENCHMARK(BM_apply_delta)->Arg(16)->Arg(128)->Arg(1024);

void BM_compute_order(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    delta_library deltas = reverse_chain_deltas(n);
    product_configuration config{"bench", {}};
    for (const auto& d : deltas.deltas) config.deltas.push_back(d.name);
    for (auto _ : state) {
        auto order = compute_order(config, deltas);
        benchmark::DoNotOptimize(order);
    }
}
BENCHMARK(BM_compute_order)->Arg(4)->Arg(6)->Arg(8);

void BM_generate(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    model_library core = chain_library(64);
    delta_library deltas = reverse_chain_deltas(n);
    product_configuration config{"bench", {}};
    for (const auto& d : deltas.deltas) config.deltas.push_back(d.name);
    for (auto _ : state) {
        auto res = generate(core, deltas, config);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_generate)->Arg(4)->Arg(8);

} // namespace

BENCHMARK_MAIN();
