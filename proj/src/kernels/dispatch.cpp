#include "tsplab/kernels.hpp"

#include <atomic>

namespace tsplab::kernels {
namespace {

Isa detect() noexcept {
#if TSPLAB_HAVE_AVX2
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2")) return Isa::Avx2;
#endif
    return Isa::Scalar;
}

std::atomic<Isa>& selected() noexcept {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) noexcept {
    if (isa == Isa::Scalar) return true;
#if TSPLAB_HAVE_AVX2
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa active_isa() noexcept { return selected().load(std::memory_order_relaxed); }

bool force_isa(Isa isa) noexcept {
    if (!isa_available(isa)) return false;
    selected().store(isa, std::memory_order_relaxed);
    return true;
}

void reset_isa() noexcept { selected().store(detect(), std::memory_order_relaxed); }

void euclidean_row(std::span<const double> xs, std::span<const double> ys, std::size_t i,
                   std::span<double> out) noexcept {
#if TSPLAB_HAVE_AVX2
    if (active_isa() == Isa::Avx2) return avx2::euclidean_row(xs, ys, i, out);
#endif
    scalar::euclidean_row(xs, ys, i, out);
}

std::size_t nearest_unmasked(std::span<const double> values,
                             std::span<const std::uint8_t> mask) noexcept {
#if TSPLAB_HAVE_AVX2
    if (active_isa() == Isa::Avx2) return avx2::nearest_unmasked(values, mask);
#endif
    return scalar::nearest_unmasked(values, mask);
}

double closed_path_length(std::span<const std::int32_t> order, std::size_t start, int step,
                          const double* matrix, std::size_t n) noexcept {
#if TSPLAB_HAVE_AVX2
    if (active_isa() == Isa::Avx2) return avx2::closed_path_length(order, start, step, matrix, n);
#endif
    return scalar::closed_path_length(order, start, step, matrix, n);
}

}  // namespace tsplab::kernels
