// Compares the OpenMP kernels against the serial reference paths and checks
// that both produce identical results.
#include <chrono>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "charlier/curve.hpp"
#include "charlier/roots.hpp"

using namespace charlier;
using clock_type = std::chrono::steady_clock;

namespace {

template <typename F>
double time_ms(const F& f) {
    const auto t0 = clock_type::now();
    f();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool match) {
    std::printf("%-22s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n",
                name, serial_ms, parallel_ms, serial_ms / parallel_ms,
                match ? "results identical" : "RESULTS DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both paths run serially\n");
#endif

    {
        TracedCurve cs, cp;
        const double s = time_ms([&] { cs = trace_curve(1.0, 4097, Exec::serial); });
        const double p = time_ms([&] { cp = trace_curve(1.0, 4097, Exec::parallel); });
        bool match = cs.samples.size() == cp.samples.size();
        for (std::size_t i = 0; match && i < cs.samples.size(); ++i)
            match = cs.samples[i].x == cp.samples[i].x &&
                    cs.samples[i].density == cp.samples[i].density;
        report("trace_curve m=4097", s, p, match);
    }
    {
        RootSet rs, rp;
        const double s = time_ms([&] { rs = find_roots(100, 1.0, 7, Exec::serial); });
        const double p = time_ms([&] { rp = find_roots(100, 1.0, 7, Exec::parallel); });
        bool match = rs.iterations == rp.iterations;
        for (int i = 0; match && i < rs.n; ++i) match = rs.roots[i] == rp.roots[i];
        report("find_roots n=100", s, p, match);
    }
    {
        const Complex lo(-0.1, -2.1), hi(1.1, 2.1);
        int cs = 0, cp = 0;
        const double s =
            time_ms([&] { cs = count_zeros(lo, hi, 90, 1.0, 1024, Exec::serial); });
        const double p =
            time_ms([&] { cp = count_zeros(lo, hi, 90, 1.0, 1024, Exec::parallel); });
        report("count_zeros n=90", s, p, cs == cp);
    }
    return 0;
}
