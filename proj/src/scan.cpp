#include "csdiv/scan.hpp"

#include <limits>
#include <vector>

namespace csdiv {

namespace {

// Lexicographic (value, arg) minimum: associative and commutative, so the
// parallel reduction order cannot change the result.
inline void combine(double v, double x, double& best_v, double& best_x) {
    if (v < best_v || (v == best_v && x < best_x)) {
        best_v = v;
        best_x = x;
    }
}

}  // namespace

ScanResult min_scan_serial(std::span<const double> xs, const std::function<double(double)>& fn) {
    double best_v = std::numeric_limits<double>::infinity();
    double best_x = std::numeric_limits<double>::infinity();
    for (double x : xs) combine(fn(x), x, best_v, best_x);
    return {best_v, best_x};
}

ScanResult min_scan(std::span<const double> xs, const std::function<double(double)>& fn) {
    double best_v = std::numeric_limits<double>::infinity();
    double best_x = std::numeric_limits<double>::infinity();
    const std::int64_t n = static_cast<std::int64_t>(xs.size());
#pragma omp parallel
    {
        double local_v = std::numeric_limits<double>::infinity();
        double local_x = std::numeric_limits<double>::infinity();
#pragma omp for nowait schedule(static)
        for (std::int64_t i = 0; i < n; ++i)
            combine(fn(xs[static_cast<std::size_t>(i)]), xs[static_cast<std::size_t>(i)], local_v,
                    local_x);
#pragma omp critical(csdiv_min_scan)
        combine(local_v, local_x, best_v, best_x);
    }
    return {best_v, best_x};
}

IndexedScanResult min_scan_indexed_serial(std::size_t count,
                                          const std::function<double(std::size_t)>& fn) {
    double best_v = std::numeric_limits<double>::infinity();
    double best_i = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) combine(fn(i), static_cast<double>(i), best_v, best_i);
    return {best_v, static_cast<std::size_t>(best_i)};
}

IndexedScanResult min_scan_indexed(std::size_t count, const std::function<double(std::size_t)>& fn) {
    double best_v = std::numeric_limits<double>::infinity();
    double best_i = std::numeric_limits<double>::infinity();
    const std::int64_t n = static_cast<std::int64_t>(count);
#pragma omp parallel
    {
        double local_v = std::numeric_limits<double>::infinity();
        double local_i = std::numeric_limits<double>::infinity();
#pragma omp for nowait schedule(static)
        for (std::int64_t i = 0; i < n; ++i)
            combine(fn(static_cast<std::size_t>(i)), static_cast<double>(i), local_v, local_i);
#pragma omp critical(csdiv_min_scan_indexed)
        combine(local_v, local_i, best_v, best_i);
    }
    return {best_v, static_cast<std::size_t>(best_i)};
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace csdiv
