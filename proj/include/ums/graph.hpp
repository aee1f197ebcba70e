#pragma once

/*
 * Simple undirected graphs and their path-metric encoding. The encoding
 * sends a connected graph to the metric space on its vertex set whose
 * distances are shortest path lengths; two connected graphs are isomorphic
 * exactly when their encodings are isometric.
 */

#include "ums/metric_space.hpp"

#include <iosfwd>
#include <utility>
#include <vector>

namespace ums {

struct SimpleGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges; // i < j, sorted, no duplicates

    bool adjacent(int a, int b) const;
};

// Normalizes edge order and checks ranges; errors:
//   BadVertex i, SelfLoop i, DuplicateEdge i j
SimpleGraph make_graph(int n, std::vector<std::pair<int, int>> edges);

// BFS all-pairs path metric; error: DisconnectedGraph i j for a witness
// pair in different components.
FiniteMetricSpace graph_to_metric(const SimpleGraph& g);

// "graph v1" text format: "n <count>", "e <i> <j>" per edge, "end".
SimpleGraph read_graph(std::istream& in);
SimpleGraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const SimpleGraph& g);
void write_graph_file(const std::string& path, const SimpleGraph& g);

} // namespace ums
