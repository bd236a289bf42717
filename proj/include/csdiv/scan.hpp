#pragma once

#include <cstdint>
#include <functional>
#include <span>

namespace csdiv {

// Data-parallel inner loops used by the certification grid scans, the
// random-pair sampling checks, and the envelope sweeps.  Each kernel has a
// serial reference implementation; the OpenMP versions evaluate the same
// function at the same points and reduce with an associative, tie-broken
// minimum, so parallel results are bitwise identical to serial ones.

struct ScanResult {
    double min_value = 0.0;
    double arg = 0.0;  // point at which the minimum is attained
};

ScanResult min_scan_serial(std::span<const double> xs, const std::function<double(double)>& fn);
ScanResult min_scan(std::span<const double> xs, const std::function<double(double)>& fn);

struct IndexedScanResult {
    double min_value = 0.0;
    std::size_t index = 0;
};

IndexedScanResult min_scan_indexed_serial(std::size_t count,
                                          const std::function<double(std::size_t)>& fn);
IndexedScanResult min_scan_indexed(std::size_t count, const std::function<double(std::size_t)>& fn);

/// splitmix64 of (seed, index): a per-index RNG seed that does not depend on
/// thread partitioning.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace csdiv
