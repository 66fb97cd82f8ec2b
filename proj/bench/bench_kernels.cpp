// Serial reference kernels against their OpenMP counterparts.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "gidar/estimate.hpp"
#include "gidar/gid.hpp"

#ifdef GIDAR_HAVE_OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double seconds(F f) {
    const auto t0 = Clock::now();
    f();
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool same(const gidar::StudyReport& a, const gidar::StudyReport& b) {
    for (std::size_t i = 0; i < a.replicates.size(); ++i) {
        const auto &x = a.replicates[i], &y = b.replicates[i];
        if (x.theta_hat != y.theta_hat || x.param1_hat != y.param1_hat || x.param2_hat != y.param2_hat) return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t draws = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 20000;
    const std::size_t reps = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 16;
    int threads = 1;
#ifdef GIDAR_HAVE_OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("threads: %d\n", threads);
    int status = 0;

    const gidar::GidDistribution law(gidar::LaplaceExponent::gamma(2.0, 1.0));
    const auto sampler = law.sampler();
    const gidar::numerics::RngStream stream(7, 0);
    std::vector<double> a(draws), b(draws);
    const double ts = seconds([&] { sampler.sample_serial(stream, 0, a); });
    const double tp = seconds([&] { sampler.sample_parallel(stream, 0, b); });
    const bool eq = a == b;
    std::printf("sampling  n=%zu  serial %.3fs  parallel %.3fs  speedup %.2fx  identical %s\n", draws, ts, tp,
                ts / tp, eq ? "yes" : "NO");
    status |= !eq;

    gidar::StudyConfig cfg;
    cfg.base = gidar::LaplaceExponent::tempered_stable(1.0, 0.6);
    cfg.replicates = reps;
    gidar::StudyReport rs, rp;
    const double ss = seconds([&] { rs = gidar::run_study(cfg, gidar::ExecutionPolicy::Serial); });
    const double sp = seconds([&] { rp = gidar::run_study(cfg, gidar::ExecutionPolicy::Parallel); });
    const bool seq = same(rs, rp);
    std::printf("study     reps=%zu  serial %.3fs  parallel %.3fs  speedup %.2fx  identical %s\n", reps, ss, sp,
                ss / sp, seq ? "yes" : "NO");
    status |= !seq;
    return status;
}
