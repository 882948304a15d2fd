// Encoding-side costs only; solver time is measured by `tamitl bench`.
#include "tamitl/bench.hpp"
#include "tamitl/bmc.hpp"

#include <benchmark/benchmark.h>

using namespace tamitl;

namespace {

bench::family fam_of(int i) { return static_cast<bench::family>(i); }

std::string prop_of(bench::family f) {
    return f == bench::family::fischer ? "live-six" : bench::properties(f).front();
}

void BM_Prepare(benchmark::State& st) {
    auto f = fam_of(static_cast<int>(st.range(0)));
    auto in = bench::generate({f, static_cast<int>(st.range(1)), prop_of(f)});
    for (auto _ : st) benchmark::DoNotOptimize(bmc::prepare(in.net, in.property, in.cfg).formula);
    st.SetLabel(bench::to_string(f));
}

void BM_Unroll(benchmark::State& st) {
    auto f = fam_of(static_cast<int>(st.range(0)));
    auto in = bench::generate({f, 2, prop_of(f)});
    auto p = bmc::prepare(in.net, in.property, in.cfg);
    std::size_t bytes = 0;
    for (auto _ : st) {
        auto s = bmc::unroll(p, static_cast<int>(st.range(1)));
        bytes = s.text.size();
        benchmark::DoNotOptimize(s.text.data());
    }
    st.counters["smt_bytes"] = static_cast<double>(bytes);
    st.SetLabel(bench::to_string(f));
}

void BM_OracleEval(benchmark::State& st) {
    auto in = bench::generate({bench::family::fischer, 2, "live-five"});
    auto p = bmc::prepare(in.net, in.property, in.cfg);
    oracle::trace tr;
    for (int r = 0; r < st.range(0); ++r) {
        tr.steps.push_back({1, {{0, true}, {-1, true}}});
        tr.steps.push_back({1, {{1, true}, {-1, true}}});
        tr.steps.push_back({3, {{3, true}, {-1, true}}});
        tr.steps.push_back({1, {{4, true}, {-1, true}}});
    }
    auto sig = oracle::trace_to_signal(p.net, tr);
    for (auto _ : st) benchmark::DoNotOptimize(oracle::satisfaction_set(p.property, sig, 100));
}

}  // namespace

BENCHMARK(BM_Prepare)->ArgsProduct({{0, 1, 2}, {2, 4, 8}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Unroll)->ArgsProduct({{0, 1, 2}, {10, 20, 30}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleEval)->Arg(1)->Arg(4)->Arg(16)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
