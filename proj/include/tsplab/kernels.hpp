#pragma once

// Data-parallel inner loops shared by the solvers.
//
// Each kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The variant is chosen once at runtime from the CPU feature bits;
// tests force each ISA in turn and check the variants against the reference.
//
//   euclidean_row      bit-identical across ISAs (no FMA, IEEE sqrt)
//   nearest_unmasked   bit-identical (argmin, lowest index wins ties)
//   closed_path_length equal within rounding; summation order differs

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace tsplab::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// True when the CPU and the build both support `isa`.
bool isa_available(Isa isa) noexcept;

/// ISA used by the dispatching entry points below.
Isa active_isa() noexcept;

/// Force the dispatch target. Not thread-safe; intended for tests and
/// benchmarks. Returns false (and leaves the selection alone) when the ISA is
/// unavailable.
bool force_isa(Isa isa) noexcept;

/// Restore CPU-feature based selection.
void reset_isa() noexcept;

/// out[j] = sqrt((xs[i]-xs[j])^2 + (ys[i]-ys[j])^2) for every j.
void euclidean_row(std::span<const double> xs, std::span<const double> ys, std::size_t i,
                   std::span<double> out) noexcept;

/// Index of the smallest values[j] with mask[j] == 0; ties go to the lowest
/// index. Returns values.size() when every entry is masked.
std::size_t nearest_unmasked(std::span<const double> values,
                             std::span<const std::uint8_t> mask) noexcept;

/// Length of the closed cycle through `order`, walking order.size() edges
/// from position `start` in direction `step` (+1 or -1, wrapping). `matrix`
/// is row-major with row stride n.
double closed_path_length(std::span<const std::int32_t> order, std::size_t start, int step,
                          const double* matrix, std::size_t n) noexcept;

namespace scalar {
void euclidean_row(std::span<const double> xs, std::span<const double> ys, std::size_t i,
                   std::span<double> out) noexcept;
std::size_t nearest_unmasked(std::span<const double> values,
                             std::span<const std::uint8_t> mask) noexcept;
double closed_path_length(std::span<const std::int32_t> order, std::size_t start, int step,
                          const double* matrix, std::size_t n) noexcept;
}  // namespace scalar

#if TSPLAB_HAVE_AVX2
namespace avx2 {
void euclidean_row(std::span<const double> xs, std::span<const double> ys, std::size_t i,
                   std::span<double> out) noexcept;
std::size_t nearest_unmasked(std::span<const double> values,
                             std::span<const std::uint8_t> mask) noexcept;
double closed_path_length(std::span<const std::int32_t> order, std::size_t start, int step,
                          const double* matrix, std::size_t n) noexcept;
}  // namespace avx2
#endif

}  // namespace tsplab::kernels
