#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>

#include "tsplab/constructive.hpp"
#include "tsplab/kernels.hpp"

namespace tsplab::constructive {

double total_weight(const EdgeList& edges) noexcept {
    double total = 0.0;
    for (const Edge& e : edges) total += e.w;
    return total;
}

EdgeList minimum_spanning_tree(const DistanceMatrix& d) {
    const std::size_t n = d.size();
    EdgeList tree;
    if (n < 2) return tree;
    tree.reserve(n - 1);

    std::vector<double> key(n, std::numeric_limits<double>::infinity());
    std::vector<City> parent(n, -1);
    std::vector<std::uint8_t> in_tree(n, 0);
    key[0] = 0.0;
    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t u = kernels::nearest_unmasked(key, in_tree);
        in_tree[u] = 1;
        if (parent[u] >= 0) tree.push_back({parent[u], static_cast<City>(u), key[u]});
        const auto row = d.row(u);
        for (std::size_t v = 0; v < n; ++v) {
            if (!in_tree[v] && row[v] < key[v]) {
                key[v] = row[v];
                parent[v] = static_cast<City>(u);
            }
        }
    }
    return tree;
}

EdgeList greedy_matching(const DistanceMatrix& d, const std::vector<City>& vertices) {
    EdgeList pairs;
    for (std::size_t a = 0; a < vertices.size(); ++a) {
        for (std::size_t b = a + 1; b < vertices.size(); ++b) {
            const City u = std::min(vertices[a], vertices[b]);
            const City v = std::max(vertices[a], vertices[b]);
            pairs.push_back({u, v, d(static_cast<std::size_t>(u), static_cast<std::size_t>(v))});
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Edge& x, const Edge& y) {
        return std::tie(x.w, x.u, x.v) < std::tie(y.w, y.u, y.v);
    });
    EdgeList matching;
    std::vector<std::uint8_t> matched(d.size(), 0);
    for (const Edge& e : pairs) {
        if (matched[static_cast<std::size_t>(e.u)] || matched[static_cast<std::size_t>(e.v)]) continue;
        matched[static_cast<std::size_t>(e.u)] = 1;
        matched[static_cast<std::size_t>(e.v)] = 1;
        matching.push_back(e);
    }
    return matching;
}

namespace {

// Hierholzer on a connected multigraph with all degrees even. Neighbours
// are taken in ascending (vertex, edge id) order.
std::vector<City> euler_circuit(std::size_t n, const EdgeList& edges, City start) {
    std::vector<std::vector<std::pair<City, std::size_t>>> adj(n);
    for (std::size_t id = 0; id < edges.size(); ++id) {
        adj[static_cast<std::size_t>(edges[id].u)].push_back({edges[id].v, id});
        adj[static_cast<std::size_t>(edges[id].v)].push_back({edges[id].u, id});
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());

    std::vector<std::uint8_t> used(edges.size(), 0);
    std::vector<std::size_t> cursor(n, 0);
    std::vector<City> stack{start};
    std::vector<City> circuit;
    while (!stack.empty()) {
        const auto v = static_cast<std::size_t>(stack.back());
        auto& list = adj[v];
        while (cursor[v] < list.size() && used[list[cursor[v]].second]) ++cursor[v];
        if (cursor[v] == list.size()) {
            circuit.push_back(stack.back());
            stack.pop_back();
        } else {
            const auto [next, id] = list[cursor[v]];
            used[id] = 1;
            stack.push_back(next);
        }
    }
    std::reverse(circuit.begin(), circuit.end());
    return circuit;
}

}  // namespace

ChristofidesResult christofides(const DistanceMatrix& d) {
    const std::size_t n = d.size();
    ChristofidesResult result;
    if (n <= kMetricCheckLimit) result.metric = d.satisfies_triangle_inequality();
    if (n < 3) {
        result.tour.order.resize(n);
        std::iota(result.tour.order.begin(), result.tour.order.end(), City{0});
        return result;
    }

    EdgeList multigraph = minimum_spanning_tree(d);
    std::vector<std::size_t> degree(n, 0);
    for (const Edge& e : multigraph) {
        ++degree[static_cast<std::size_t>(e.u)];
        ++degree[static_cast<std::size_t>(e.v)];
    }
    std::vector<City> odd;
    for (std::size_t v = 0; v < n; ++v)
        if (degree[v] % 2 == 1) odd.push_back(static_cast<City>(v));
    for (const Edge& e : greedy_matching(d, odd)) multigraph.push_back(e);

    const std::vector<City> circuit = euler_circuit(n, multigraph, City{0});
    std::vector<std::uint8_t> seen(n, 0);
    result.tour.order.reserve(n);
    for (const City c : circuit) {
        if (seen[static_cast<std::size_t>(c)]) continue;
        seen[static_cast<std::size_t>(c)] = 1;
        result.tour.order.push_back(c);
    }
    return result;
}

}  // namespace tsplab::constructive
