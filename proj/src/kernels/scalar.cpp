#include "tsplab/kernels.hpp"

#include <cmath>
#include <limits>

namespace tsplab::kernels::scalar {

void euclidean_row(std::span<const double> xs, std::span<const double> ys, std::size_t i,
                   std::span<double> out) noexcept {
    const double xi = xs[i];
    const double yi = ys[i];
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double dx = xi - xs[j];
        const double dy = yi - ys[j];
        out[j] = std::sqrt(dx * dx + dy * dy);
    }
}

std::size_t nearest_unmasked(std::span<const double> values,
                             std::span<const std::uint8_t> mask) noexcept {
    std::size_t best = values.size();
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (mask[j] != 0) continue;
        if (best == values.size() || values[j] < best_value) {
            best = j;
            best_value = values[j];
        }
    }
    return best;
}

double closed_path_length(std::span<const std::int32_t> order, std::size_t start, int step,
                          const double* matrix, std::size_t n) noexcept {
    const std::size_t m = order.size();
    if (m < 2) return 0.0;
    const std::size_t advance = step >= 0 ? 1 : m - 1;
    double total = 0.0;
    std::size_t pos = start;
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t next = (pos + advance) % m;
        total += matrix[static_cast<std::size_t>(order[pos]) * n +
                        static_cast<std::size_t>(order[next])];
        pos = next;
    }
    return total;
}

}  // namespace tsplab::kernels::scalar
