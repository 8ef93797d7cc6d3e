#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>

#include "tsplab/exact.hpp"

namespace tsplab::exact {

BoundCache BoundCache::build(const DistanceMatrix& d) {
    const std::size_t n = d.size();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    BoundCache cache{std::vector<double>(n, kInf), std::vector<double>(n, kInf)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double w = d(i, j);
            if (w < cache.min1[i]) {
                cache.min2[i] = cache.min1[i];
                cache.min1[i] = w;
            } else if (w < cache.min2[i]) {
                cache.min2[i] = w;
            }
        }
        // With two cities the only incident edge is used twice.
        if (cache.min2[i] == kInf) cache.min2[i] = cache.min1[i];
    }
    return cache;
}

double root_lower_bound(const BoundCache& cache) noexcept {
    double total = 0.0;
    for (std::size_t i = 0; i < cache.min1.size(); ++i) total += cache.min1[i] + cache.min2[i];
    return total / 2.0;
}

namespace {

class Search {
public:
    Search(const DistanceMatrix& d, BbVariant variant, const SearchCap& cap)
        : d_(d),
          n_(d.size()),
          variant_(variant),
          cap_(cap),
          cache_(BoundCache::build(d)),
          start_(std::chrono::steady_clock::now()),
          path_(n_, 0),
          visited_(n_, 0),
          candidates_(n_, std::vector<City>(n_)) {}

    OptResult run() {
        OptResult result;
        incumbent_ = std::numeric_limits<double>::infinity();
        if (variant_ == BbVariant::EnhancedR1) {
            best_ = nearest_neighbor_tour(d_, City{0});
            incumbent_ = tour_length(best_, d_);
        }
        result.initial_incumbent = incumbent_;

        path_[0] = 0;
        visited_[0] = 1;
        const double open_sum = root_lower_bound(cache_) - (cache_.min1[0] + cache_.min2[0]) / 2.0;
        explore(0.0, open_sum, 1);

        if (best_.order.empty()) best_ = nearest_neighbor_tour(d_, City{0});
        result.best = best_;
        result.best_cost = tour_length(best_, d_);
        result.nodes_expanded = nodes_;
        result.elapsed_s = elapsed();
        result.proven_optimal = !capped_;
        return result;
    }

private:
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

    bool cap_reached() {
        if (capped_) return true;
        if (cap_.max_nodes && nodes_ >= *cap_.max_nodes) capped_ = true;
        if (cap_.max_seconds && (nodes_ & 0x3FF) == 0 && elapsed() >= *cap_.max_seconds) capped_ = true;
        return capped_;
    }

    // Lower bound on any completion of path_[0 .. level-1] extended by
    // `next`: the fixed path weight, half of (min1 + min2) for every city
    // still unvisited, and half of the cheapest possible second edge at each
    // path end. An end whose fixed edge is its unique cheapest edge must
    // use at least its second-cheapest edge for the other side.
    double other_edge_bound(std::size_t v, double fixed) const noexcept {
        return fixed > cache_.min1[v] ? cache_.min1[v] : cache_.min2[v];
    }

    // `weight` is the length of path_[0 .. level-1]; `open_sum` is
    // sum (min1 + min2) / 2 over the unvisited cities.
    void explore(double weight, double open_sum, std::size_t level) {
        const auto last = static_cast<std::size_t>(path_[level - 1]);
        if (level == n_) {
            const double total = weight + d_(last, 0);
            if (total < incumbent_) {
                incumbent_ = total;
                best_.order.assign(path_.begin(), path_.end());
            }
            return;
        }

        std::size_t count = 0;
        auto& cand = candidates_[level];
        for (std::size_t i = 0; i < n_; ++i)
            if (!visited_[i]) cand[count++] = static_cast<City>(i);
        if (variant_ == BbVariant::EnhancedR1) {
            std::stable_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(count),
                             [&](City a, City b) {
                                 return d_(last, static_cast<std::size_t>(a)) < d_(last, static_cast<std::size_t>(b));
                             });
        }

        for (std::size_t k = 0; k < count; ++k) {
            if (cap_reached()) return;
            const auto next = static_cast<std::size_t>(cand[k]);
            const double child_weight = weight + d_(last, next);
            const double child_open = open_sum - (cache_.min1[next] + cache_.min2[next]) / 2.0;
            double bound;
            if (level + 1 == n_) {
                bound = child_weight + d_(next, 0);
            } else {
                const double first_edge = level == 1 ? d_(0, next) : d_(0, static_cast<std::size_t>(path_[1]));
                bound = child_weight + child_open +
                        (other_edge_bound(0, first_edge) + other_edge_bound(next, d_(last, next))) / 2.0;
            }
            ++nodes_;
            if (bound < incumbent_) {
                path_[level] = static_cast<City>(next);
                visited_[next] = 1;
                explore(child_weight, child_open, level + 1);
                visited_[next] = 0;
            }
        }
    }

    const DistanceMatrix& d_;
    std::size_t n_;
    BbVariant variant_;
    SearchCap cap_;
    BoundCache cache_;
    std::chrono::steady_clock::time_point start_;
    std::vector<City> path_;
    std::vector<std::uint8_t> visited_;
    std::vector<std::vector<City>> candidates_;
    Tour best_;
    double incumbent_ = 0.0;
    std::uint64_t nodes_ = 0;
    bool capped_ = false;
};

}  // namespace

OptResult branch_and_bound(const DistanceMatrix& d, BbVariant variant, const SearchCap& cap) {
    if (d.size() < 2) throw std::invalid_argument("branch and bound needs at least two cities");
    Search search(d, variant, cap);
    return search.run();
}

}  // namespace tsplab::exact
