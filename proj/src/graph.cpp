#include "ums/graph.hpp"

#include <algorithm>
#include <queue>

namespace ums {

bool SimpleGraph::adjacent(int a, int b) const {
    if (a > b) std::swap(a, b);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
}

SimpleGraph make_graph(int n, std::vector<std::pair<int, int>> edges) {
    for (auto& [a, b] : edges) {
        if (a < 0 || a >= n)
            throw MetricError("BadVertex", {a});
        if (b < 0 || b >= n)
            throw MetricError("BadVertex", {b});
        if (a == b)
            throw MetricError("SelfLoop", {a});
        if (a > b)
            std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (edges[i] == edges[i - 1])
            throw MetricError("DuplicateEdge", {edges[i].first, edges[i].second});
    return SimpleGraph{n, std::move(edges)};
}

FiniteMetricSpace graph_to_metric(const SimpleGraph& g) {
    std::vector<std::vector<int>> adj(g.n);
    for (auto [a, b] : g.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<std::vector<Rational>> rows(g.n, std::vector<Rational>(g.n));
    std::vector<int> depth(g.n);
    for (int src = 0; src < g.n; ++src) {
        std::fill(depth.begin(), depth.end(), -1);
        depth[src] = 0;
        std::queue<int> q;
        q.push(src);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u])
                if (depth[v] < 0) {
                    depth[v] = depth[u] + 1;
                    q.push(v);
                }
        }
        for (int v = 0; v < g.n; ++v) {
            if (depth[v] < 0)
                throw MetricError("DisconnectedGraph", {src, v});
            rows[src][v] = Rational(depth[v]);
        }
    }
    return validate_space(rows);
}

} // namespace ums
