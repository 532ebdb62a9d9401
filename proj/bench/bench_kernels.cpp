// Serial reference vs OpenMP timings for the data-parallel kernels.
//
//   bench_kernels [--repeat R] [--mc-samples S]
//
// Each row also checks that the two paths produced identical results.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "CLI11.hpp"
#include "curvlab/degeneration.hpp"
#include "curvlab/polar_metric.hpp"
#include "curvlab/polyhedron.hpp"
#include "curvlab/schlafli.hpp"
#include "curvlab/simplex_gram.hpp"

using namespace curvlab;

namespace {

template <class F>
double best_of(int repeat, F&& f) {
    double best = 1e300;
    for (int r = 0; r < repeat; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void row(const char* kernel, double serial, double parallel, bool same) {
    std::printf("%s,%d,%.17g,%.17g,%.17g,%d\n", kernel, omp_get_max_threads(), serial, parallel, serial / parallel,
                same ? 1 : 0);
    std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serial vs parallel kernel timings"};
    int repeat = 3;
    std::uint64_t samples = 2'000'000;
    app.add_option("--repeat", repeat)->check(CLI::PositiveNumber);
    app.add_option("--mc-samples", samples)->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    std::printf("kernel,threads,serial_s,parallel_s,speedup,identical\n");

    {
        VertexMatrix V = vertices_from_gram(gram_from_angles(AngleVector::uniform(3, 1.2)));
        McOptions opt;
        opt.samples = samples;
        VolumeEstimate a, b;
        opt.exec = Exec::Serial;
        double s = best_of(repeat, [&] { a = mc_volume_oracle(V, opt); });
        opt.exec = Exec::Parallel;
        double p = best_of(repeat, [&] { b = mc_volume_oracle(V, opt); });
        row("mc_volume_oracle", s, p, a.value == b.value && a.error_bound == b.error_bound);
    }
    {
        SuiteResult a, b;
        double s = best_of(repeat, [&] { a = run_suite("anglemma", 2.0, 5000, 1, Exec::Serial); });
        double p = best_of(repeat, [&] { b = run_suite("anglemma", 2.0, 5000, 1, Exec::Parallel); });
        bool same = a.violations == b.violations && a.min_margin == b.min_margin;
        row("run_suite(anglemma)", s, p, same);
    }
    {
        Polyhedron P = random_klein_hull(30, 0.9, 7);
        DualMetric D = dual_metric(P);
        DualCycle a, b;
        double s = best_of(repeat, [&] { a = min_separating_cycle(P, D, Exec::Serial); });
        double p = best_of(repeat, [&] { b = min_separating_cycle(P, D, Exec::Parallel); });
        row("min_separating_cycle", s, p, a.weight == b.weight && a.edges == b.edges);
    }
    {
        std::vector<ScanRow> a, b;
        double s = best_of(repeat, [&] { a = scan_degeneration(6, {10, 20}, 4, 1, false, Exec::Serial); });
        double p = best_of(repeat, [&] { b = scan_degeneration(6, {10, 20}, 4, 1, false, Exec::Parallel); });
        bool same = a.size() == b.size();
        for (std::size_t i = 0; same && i < a.size(); ++i)
            same = a[i].cycle_total == b[i].cycle_total && a[i].max_edge == b[i].max_edge;
        row("scan_degeneration", s, p, same);
    }
    return 0;
}
