#include <algorithm>
#include <limits>

#include "tsplab/meta.hpp"

namespace tsplab::meta {

std::uint64_t TabuList::edge_pair_key(City a, City b, City c, City e) noexcept {
    auto edge = [](City u, City v) -> std::uint64_t {
        const auto lo = static_cast<std::uint64_t>(std::min(u, v));
        const auto hi = static_cast<std::uint64_t>(std::max(u, v));
        return (lo << 16) | hi;
    };
    const std::uint64_t first = edge(a, b);
    const std::uint64_t second = edge(c, e);
    return first < second ? (first << 32) | second : (second << 32) | first;
}

void TabuList::forbid(std::uint64_t removed_pair, std::uint64_t iteration) {
    const std::uint64_t until = iteration + tenure_;
    std::erase_if(entries_, [&](const auto& entry) { return entry.second <= iteration || entry.first == removed_pair; });
    entries_.emplace_back(removed_pair, until);
}

bool TabuList::is_tabu(std::uint64_t added_pair, std::uint64_t iteration) const noexcept {
    return expiry(added_pair) >= iteration && expiry(added_pair) != 0;
}

std::uint64_t TabuList::expiry(std::uint64_t pair) const noexcept {
    for (const auto& [key, until] : entries_)
        if (key == pair) return until;
    return 0;
}

// Best-admissible 2-opt tabu search. A move is admissible when it is not
// tabu or when it would beat the global best (aspiration). When every move
// is tabu and none aspirates, the move whose tabu status expires first is
// taken so the search never stalls.
SolveResult solve_tabu(const DistanceMatrix& d, const TabuParams& p, SolveBudget budget, std::uint64_t seed) {
    if (p.tenure < 1) throw InvalidParameters("tabu tenure must be at least 1");
    const std::size_t n = d.size();
    if (n > 65535) throw InvalidParameters("tabu search supports at most 65535 cities");
    SearchMonitor monitor(d, budget, seed);

    Tour current = nearest_neighbor_tour(d, City{0});
    double current_cost = tour_length(current, d);
    monitor.count();
    monitor.offer(current, current_cost);
    if (n < 4) return std::move(monitor).finish();

    TabuList tabu(p.tenure);
    constexpr double kInf = std::numeric_limits<double>::infinity();
    constexpr double kEps = 1e-10;

    for (std::uint64_t iteration = 1; !monitor.exhausted(); ++iteration) {
        const auto& o = current.order;
        double best_delta = kInf;
        std::size_t best_i = 0, best_j = 0;
        double fallback_delta = kInf;
        std::uint64_t fallback_expiry = std::numeric_limits<std::uint64_t>::max();
        std::size_t fallback_i = 0, fallback_j = 0;
        std::uint64_t evaluated = 0;

        for (std::size_t i = 0; i + 2 < n; ++i) {
            const std::size_t j_end = i == 0 ? n - 1 : n;
            for (std::size_t j = i + 2; j < j_end; ++j) {
                ++evaluated;
                const double delta = two_opt_delta(o, d, i, j);
                if (delta >= best_delta) continue;
                const std::uint64_t added = TabuList::edge_pair_key(o[i], o[j], o[i + 1], o[(j + 1) % n]);
                const std::uint64_t until = tabu.expiry(added);
                const bool is_tabu = until != 0 && until >= iteration;
                const bool aspirates = current_cost + delta < monitor.best_cost() - kEps;
                if (!is_tabu || aspirates) {
                    best_delta = delta;
                    best_i = i;
                    best_j = j;
                } else if (until < fallback_expiry || (until == fallback_expiry && delta < fallback_delta)) {
                    fallback_expiry = until;
                    fallback_delta = delta;
                    fallback_i = i;
                    fallback_j = j;
                }
            }
        }
        monitor.count(evaluated);

        if (best_delta == kInf) {
            best_i = fallback_i;
            best_j = fallback_j;
        }
        const std::uint64_t removed =
            TabuList::edge_pair_key(o[best_i], o[best_i + 1], o[best_j], o[(best_j + 1) % n]);
        apply_two_opt(current.order, best_i, best_j);
        tabu.forbid(removed, iteration);
        current_cost = tour_length(current, d);
        monitor.offer(current, current_cost);
    }
    return std::move(monitor).finish();
}

}  // namespace tsplab::meta
