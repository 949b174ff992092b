#pragma once

#include <vector>

#include "scribble/mask/binary_mask.hpp"

namespace scribble {

struct GraphEdge {
    int u = 0;  // u < v
    int v = 0;
    double length = 0.0;

    friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

/// Undirected weighted graph over skeleton pixels.
struct SkeletonGraph {
    std::vector<Point> nodes;
    std::vector<GraphEdge> edges;  // sorted by (u, v)
    std::vector<int> component;    // node → component id, numbered by lowest node

    int component_count() const;
    bool is_forest() const {
        return edges.size() + static_cast<std::size_t>(component_count()) == nodes.size();
    }

    /// Normalizes edge endpoints and order, then computes components.
    static SkeletonGraph from_edges(std::vector<Point> nodes, std::vector<GraphEdge> edges);
};

struct GraphPath {
    std::vector<int> nodes;  // node indices from one end to the other
    double length = 0.0;
};

/// Nodes are the true pixels in raster order; an edge joins every pair of
/// nodes at Euclidean distance d with 0 < d < radius.
SkeletonGraph build_graph(const BinaryMask& skeleton, double radius = 1.5);

/// Spanning forest with the same nodes and components. Edges are visited from
/// longest to shortest (ties by endpoint indices) and dropped when they would
/// close a cycle.
SkeletonGraph remove_cycles(const SkeletonGraph& g);

/// Longest of all shortest paths over the forest: the largest tree diameter.
/// Ties go to the lexicographically smallest (lower, higher) endpoint pair, and
/// the path runs from the lower-indexed endpoint. Throws for an empty graph or
/// one that still has cycles.
GraphPath longest_path(const SkeletonGraph& g);

/// Path from `from` to the farthest node of its tree (ties → lowest index).
/// Requires a forest.
GraphPath path_to_farthest(const SkeletonGraph& g, int from);

std::vector<Point> path_points(const SkeletonGraph& g, const GraphPath& path);

}  // namespace scribble
