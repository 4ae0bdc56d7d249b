// Compares the serial reference kernels against their OpenMP variants and
// checks that both produce identical bits.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "poldm/demo.hpp"
#include "poldm/evaluation.hpp"
#include "poldm/synthesis.hpp"

namespace {

using poldm::DesignSpec;
using poldm::Direction;

template <typename Fn>
double best_of_ms(Fn&& fn, int repetitions) {
    double best = 1e300;
    for (int i = 0; i < repetitions; ++i) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        const auto stop = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(stop - start).count());
    }
    return best;
}

bool identical(const poldm::WeightSet& a, const poldm::WeightSet& b) {
    if (a.weights.size() != b.weights.size())
        return false;
    for (std::size_t m = 0; m < a.weights.size(); ++m)
        if (std::memcmp(a.weights[m].data(), b.weights[m].data(),
                        sizeof(poldm::cdouble) * a.weights[m].size()) != 0)
            return false;
    return true;
}

void report(const std::string& name, double serial_ms, double parallel_ms, bool match) {
    std::printf("%-28s %10.2f ms %10.2f ms %8.2fx   %s\n", name.c_str(), serial_ms, parallel_ms,
                serial_ms / parallel_ms, match ? "identical" : "MISMATCH");
}

DesignSpec scaled_spec() {
    DesignSpec spec = poldm::demo_design_spec();
    spec.modulation_order = 16;  // 256 composite symbols
    spec.sidelobe_dirs.clear();
    for (double phi : {90.0, 270.0})
        for (double theta = 5.0; theta <= 90.0 + 1e-9; theta += 0.25)
            spec.sidelobe_dirs.emplace_back(theta, phi);
    return spec;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run serial code\n");
#endif
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        const DesignSpec spec = poldm::demo_design_spec();
        poldm::WeightSet serial_bank, parallel_bank;
        const double serial_ms =
            best_of_ms([&] { serial_bank = poldm::synthesize_bank_serial(spec); }, 5);
        const double parallel_ms =
            best_of_ms([&] { parallel_bank = poldm::synthesize_bank(spec); }, 5);
        report("bank, demo (16 symbols)", serial_ms, parallel_ms,
               identical(serial_bank, parallel_bank));
    }

    const DesignSpec big = scaled_spec();
    poldm::WeightSet big_bank;
    {
        poldm::WeightSet serial_bank;
        const double serial_ms =
            best_of_ms([&] { serial_bank = poldm::synthesize_bank_serial(big); }, 3);
        const double parallel_ms = best_of_ms([&] { big_bank = poldm::synthesize_bank(big); }, 3);
        report("bank, scaled (256 symbols)", serial_ms, parallel_ms,
               identical(serial_bank, big_bank));
    }

    {
        std::vector<poldm::PatternSample> serial_sweep, parallel_sweep;
        const double step = 0.01;  // 18001 angles
        const double serial_ms = best_of_ms(
            [&] { serial_sweep = poldm::pattern_sweep_serial(big_bank.weights[0], big, step); },
            3);
        const double parallel_ms = best_of_ms(
            [&] { parallel_sweep = poldm::pattern_sweep(big_bank.weights[0], big, step); }, 3);
        const bool match =
            serial_sweep.size() == parallel_sweep.size() &&
            std::memcmp(serial_sweep.data(), parallel_sweep.data(),
                        sizeof(poldm::PatternSample) * serial_sweep.size()) == 0;
        report("pattern sweep (18001 angles)", serial_ms, parallel_ms, match);
    }

    return 0;
}
