// Timing harness comparing the serial reference kernels with the OpenMP
// ones, and a serial vs parallel full protocol run. Wall-clock only, no
// assertions; the equivalence of the two paths is covered by the tests.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "blindpsi/protocol/driver.hpp"
#include "blindpsi/qsim/kernels.hpp"
#include "blindpsi/qsim/state.hpp"

using namespace blindpsi;
using qsim::kernels::cplx;
using clock_t_ = std::chrono::steady_clock;

static double secs(clock_t_::time_point a, clock_t_::time_point b)
{
    return std::chrono::duration<double>(b - a).count();
}

static std::vector<cplx> random_state(int qubits, uint64_t seed)
{
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<cplx> v(std::size_t(1) << qubits);
    double norm = 0;
    for (auto& a : v) {
        a = cplx(d(eng), d(eng));
        norm += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm);
    for (auto& a : v) a *= inv;
    return v;
}

static void bench_kernels()
{
    printf("== gate kernels: serial reference vs OpenMP ==\n");
    printf("%8s %6s %14s %14s %8s\n", "qubits", "reps", "serial [ms]", "omp [ms]", "speedup");
    const cplx h = cplx(1.0 / std::sqrt(2.0), 0.0);
    const cplx mat[4] = {h, h, h, -h};
    for (int q : {14, 16, 18, 20, 22}) {
        auto v1 = random_state(q, 7);
        auto v2 = v1;
        const int reps = q <= 18 ? 200 : 40;
        const std::size_t n = v1.size();

        auto t0 = clock_t_::now();
        for (int r = 0; r < reps; ++r)
            qsim::kernels::apply_1q_serial(v1.data(), n, std::size_t(1) << (r % q), mat);
        auto t1 = clock_t_::now();
        for (int r = 0; r < reps; ++r)
            qsim::kernels::apply_1q_omp(v2.data(), n, std::size_t(1) << (r % q), mat);
        auto t2 = clock_t_::now();

        const double s = secs(t0, t1) * 1e3 / reps, p = secs(t1, t2) * 1e3 / reps;
        printf("%8d %6d %14.4f %14.4f %7.2fx\n", q, reps, s, p, s / p);
    }

    printf("\n== probability reduction ==\n");
    printf("%8s %14s %14s %8s\n", "qubits", "serial [ms]", "omp [ms]", "speedup");
    for (int q : {16, 20, 22}) {
        auto v = random_state(q, 9);
        const int reps = 50;
        volatile double sink = 0;
        auto t0 = clock_t_::now();
        for (int r = 0; r < reps; ++r)
            sink = qsim::kernels::prob_one_serial(v.data(), v.size(), 1u << (r % q));
        auto t1 = clock_t_::now();
        for (int r = 0; r < reps; ++r)
            sink = qsim::kernels::prob_one_omp(v.data(), v.size(), 1u << (r % q));
        auto t2 = clock_t_::now();
        (void)sink;
        const double s = secs(t0, t1) * 1e3 / reps, p = secs(t1, t2) * 1e3 / reps;
        printf("%8d %14.4f %14.4f %7.2fx\n", q, s, p, s / p);
    }
}

static void bench_protocol()
{
    printf("\n== full run, per-position instances serial vs OpenMP ==\n");
    const std::vector<std::string> a = {"ada", "grace", "edsger", "barbara"};
    const std::vector<std::string> b = {"grace", "alan", "barbara", "kurt"};
    for (int m : {2, 4}) {
        protocol::RunConfig cfg;
        cfg.m = m;
        cfg.seed = 99;

        cfg.parallel = false;
        auto t0 = clock_t_::now();
        auto r1 = protocol::psi_run({a.begin(), a.begin() + m}, {b.begin(), b.begin() + m}, cfg);
        auto t1 = clock_t_::now();
        cfg.parallel = true;
        auto r2 = protocol::psi_run({a.begin(), a.begin() + m}, {b.begin(), b.begin() + m}, cfg);
        auto t2 = clock_t_::now();

        printf("m=%d (%u instances): serial %.3f s, omp %.3f s, speedup %.2fx, identical=%s\n", m,
               r1.instances, secs(t0, t1), secs(t1, t2), secs(t0, t1) / secs(t1, t2),
               r1.transcript.serialize() == r2.transcript.serialize() ? "yes" : "NO");
    }
}

int main()
{
    bench_kernels();
    bench_protocol();
    return 0;
}
