#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "tsplab/kernels.hpp"
#include "tsplab/rng.hpp"

namespace k = tsplab::kernels;

namespace {

struct IsaGuard {
    ~IsaGuard() { k::reset_isa(); }
};

std::vector<double> random_values(std::size_t n, std::uint64_t seed, double lo = -1000, double hi = 1000) {
    tsplab::Rng rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform(lo, hi);
    return v;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("scalar is always available and forcing it works") {
    IsaGuard guard;
    CHECK(k::isa_available(k::Isa::Scalar));
    CHECK(k::force_isa(k::Isa::Scalar));
    CHECK(k::active_isa() == k::Isa::Scalar);
    CHECK(k::isa_name(k::Isa::Scalar) == "scalar");
}

TEST_CASE("euclidean_row scalar reference") {
    const std::vector<double> xs{0, 3, 0}, ys{0, 0, 4};
    std::vector<double> out(3);
    k::scalar::euclidean_row(xs, ys, 1, out);
    CHECK(out[0] == 3.0);
    CHECK(out[1] == 0.0);
    CHECK(out[2] == 5.0);
}

TEST_CASE("nearest_unmasked scalar reference") {
    const std::vector<double> v{5, 1, 1, 0};
    std::vector<std::uint8_t> mask{0, 0, 0, 1};
    CHECK(k::scalar::nearest_unmasked(v, mask) == 1);  // tie 1 vs 2 goes low
    mask = {1, 1, 1, 1};
    CHECK(k::scalar::nearest_unmasked(v, mask) == 4);
}

#if TSPLAB_HAVE_AVX2
TEST_CASE("avx2 kernels agree with scalar") {
    if (!k::isa_available(k::Isa::Avx2)) {
        MESSAGE("AVX2 unavailable on this CPU; equivalence not exercised");
        return;
    }
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 31u, 100u, 257u}) {
        CAPTURE(n);
        const auto xs = random_values(n, n * 7 + 1);
        const auto ys = random_values(n, n * 7 + 2);
        for (std::size_t i = 0; i < n; i += std::max<std::size_t>(1, n / 5)) {
            std::vector<double> a(n), b(n);
            k::scalar::euclidean_row(xs, ys, i, a);
            k::avx2::euclidean_row(xs, ys, i, b);
            for (std::size_t j = 0; j < n; ++j) REQUIRE(same_bits(a[j], b[j]));
        }

        tsplab::Rng rng(n);
        for (int trial = 0; trial < 20; ++trial) {
            auto v = random_values(n, 1000 + n * 31 + static_cast<std::uint64_t>(trial), 0, 10);
            // plant ties
            if (n > 3) v[n - 1] = v[n / 2];
            std::vector<std::uint8_t> mask(n);
            for (auto& m : mask) m = rng.bernoulli(0.4) ? 1 : 0;
            REQUIRE(k::scalar::nearest_unmasked(v, mask) == k::avx2::nearest_unmasked(v, mask));
        }

        std::vector<double> matrix(n * n);
        for (std::size_t i = 0; i < n; ++i) k::scalar::euclidean_row(xs, ys, i, {matrix.data() + i * n, n});
        std::vector<std::int32_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::int32_t>(i);
        rng.shuffle(std::span<std::int32_t>(order));
        for (int step : {1, -1}) {
            const double a = k::scalar::closed_path_length(order, 0, step, matrix.data(), n);
            const double b = k::avx2::closed_path_length(order, 0, step, matrix.data(), n);
            REQUIRE(std::abs(a - b) <= 1e-12 * std::max(1.0, a));
        }
    }
}

TEST_CASE("dispatch follows force_isa") {
    IsaGuard guard;
    if (!k::isa_available(k::Isa::Avx2)) return;
    CHECK(k::force_isa(k::Isa::Avx2));
    CHECK(k::active_isa() == k::Isa::Avx2);
    const std::vector<double> v{3, 2, 1, 0, 2, 1, 0, 5, 9};
    const std::vector<std::uint8_t> mask{0, 0, 0, 1, 0, 0, 0, 0, 0};
    CHECK(k::nearest_unmasked(v, mask) == 6);
    k::force_isa(k::Isa::Scalar);
    CHECK(k::nearest_unmasked(v, mask) == 6);
}
#endif
