#include "scribble/detsim/skeleton_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace scribble {
namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<int>(i);
    }
    int find(int a) {
        while (parent_[a] != a) {
            parent_[a] = parent_[parent_[a]];
            a = parent_[a];
        }
        return a;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent_[b] = a;
        return true;
    }

private:
    std::vector<int> parent_;
};

std::vector<int> label_components(std::size_t n, const std::vector<GraphEdge>& edges) {
    UnionFind uf(n);
    for (const auto& e : edges) uf.unite(e.u, e.v);
    std::vector<int> id(n, -1);
    std::vector<int> root_id(n, -1);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int r = uf.find(static_cast<int>(i));
        if (root_id[r] < 0) root_id[r] = next++;
        id[i] = root_id[r];
    }
    return id;
}

struct Adjacency {
    std::vector<std::vector<std::pair<int, double>>> out;

    explicit Adjacency(const SkeletonGraph& g) : out(g.nodes.size()) {
        for (const auto& e : g.edges) {
            out[e.u].push_back({e.v, e.length});
            out[e.v].push_back({e.u, e.length});
        }
    }
};

// Distances and parents from `root` within its tree.
void tree_distances(const Adjacency& adj, int root, std::vector<double>& dist,
                    std::vector<int>& parent) {
    std::fill(dist.begin(), dist.end(), -1.0);
    std::fill(parent.begin(), parent.end(), -1);
    std::vector<int> stack{root};
    dist[root] = 0.0;
    while (!stack.empty()) {
        const int n = stack.back();
        stack.pop_back();
        for (const auto& [m, len] : adj.out[n]) {
            if (dist[m] >= 0.0) continue;
            dist[m] = dist[n] + len;
            parent[m] = n;
            stack.push_back(m);
        }
    }
}

bool close_enough(double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace

int SkeletonGraph::component_count() const {
    int count = 0;
    for (int c : component) count = std::max(count, c + 1);
    return count;
}

SkeletonGraph SkeletonGraph::from_edges(std::vector<Point> nodes, std::vector<GraphEdge> edges) {
    for (auto& e : edges) {
        if (e.u == e.v) throw std::invalid_argument("graph edge must join distinct nodes");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    SkeletonGraph g;
    g.component = label_components(nodes.size(), edges);
    g.nodes = std::move(nodes);
    g.edges = std::move(edges);
    return g;
}

SkeletonGraph build_graph(const BinaryMask& skeleton, double radius) {
    if (skeleton.none()) throw std::invalid_argument("build_graph: empty skeleton");
    std::vector<Point> nodes = skeleton.pixels();
    std::vector<int> index_of(skeleton.size(), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        index_of[skeleton.index(nodes[i].x, nodes[i].y)] = static_cast<int>(i);
    }
    const int reach = static_cast<int>(std::ceil(radius));
    std::vector<GraphEdge> edges;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Point p = nodes[i];
        for (int dy = -reach; dy <= reach; ++dy) {
            for (int dx = -reach; dx <= reach; ++dx) {
                if (!skeleton.get_or_false(p.x + dx, p.y + dy)) continue;
                const int j = index_of[skeleton.index(p.x + dx, p.y + dy)];
                if (j <= static_cast<int>(i)) continue;
                const double d = std::hypot(dx, dy);
                if (d > 0.0 && d < radius) edges.push_back({static_cast<int>(i), j, d});
            }
        }
    }
    return SkeletonGraph::from_edges(std::move(nodes), std::move(edges));
}

SkeletonGraph remove_cycles(const SkeletonGraph& g) {
    std::vector<GraphEdge> order = g.edges;
    std::sort(order.begin(), order.end(), [](const GraphEdge& a, const GraphEdge& b) {
        if (a.length != b.length) return a.length > b.length;
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    UnionFind uf(g.nodes.size());
    std::vector<GraphEdge> kept;
    for (const auto& e : order) {
        if (uf.unite(e.u, e.v)) kept.push_back(e);
    }
    return SkeletonGraph::from_edges(g.nodes, std::move(kept));
}

GraphPath longest_path(const SkeletonGraph& g) {
    if (g.nodes.empty()) throw std::invalid_argument("longest_path: empty graph");
    if (!g.is_forest()) throw std::invalid_argument("longest_path: graph has cycles");

    const std::size_t n = g.nodes.size();
    const Adjacency adj(g);
    std::vector<double> d_start(n), d_a(n), d_b(n), d_u(n);
    std::vector<int> parent(n), parent_u(n);

    struct Best {
        double length = -1.0;
        int u = -1;
        int v = -1;
        std::vector<int> parent;
    } best;

    std::vector<bool> seen_component(static_cast<std::size_t>(g.component_count()), false);
    for (std::size_t root = 0; root < n; ++root) {
        const int comp = g.component[root];
        if (seen_component[comp]) continue;
        seen_component[comp] = true;

        // Double sweep finds one diameter (a, b); every node's eccentricity is
        // then max(d(a, ·), d(b, ·)), which picks out all diameter endpoints.
        auto farthest = [&](const std::vector<double>& d) {
            int arg = static_cast<int>(root);
            for (std::size_t i = 0; i < n; ++i) {
                if (d[i] > d[arg] && !close_enough(d[i], d[arg])) arg = static_cast<int>(i);
            }
            return arg;
        };
        tree_distances(adj, static_cast<int>(root), d_start, parent);
        const int a = farthest(d_start);
        tree_distances(adj, a, d_a, parent);
        const int b = farthest(d_a);
        const double diameter = d_a[b];
        tree_distances(adj, b, d_b, parent);

        int u = -1;
        for (std::size_t i = 0; i < n && u < 0; ++i) {
            if (d_a[i] < 0.0) continue;
            if (close_enough(std::max(d_a[i], d_b[i]), diameter)) u = static_cast<int>(i);
        }
        tree_distances(adj, u, d_u, parent_u);
        int v = u;
        if (diameter > 0.0) {
            for (std::size_t i = 0; i < n; ++i) {
                if (static_cast<int>(i) != u && d_u[i] >= 0.0 && close_enough(d_u[i], diameter)) {
                    v = static_cast<int>(i);
                    break;
                }
            }
        }

        const bool longer = diameter > best.length && !close_enough(diameter, best.length);
        const bool tie_smaller = close_enough(diameter, best.length) &&
                                 std::pair(u, v) < std::pair(best.u, best.v);
        if (best.u < 0 || longer || tie_smaller) {
            best.length = diameter;
            best.u = u;
            best.v = v;
            best.parent = parent_u;
        }
    }

    GraphPath path;
    path.length = best.length;
    for (int at = best.v; at >= 0; at = best.parent[at]) {
        path.nodes.push_back(at);
        if (at == best.u) break;
    }
    std::reverse(path.nodes.begin(), path.nodes.end());
    return path;
}

GraphPath path_to_farthest(const SkeletonGraph& g, int from) {
    if (from < 0 || static_cast<std::size_t>(from) >= g.nodes.size()) {
        throw std::out_of_range("path_to_farthest: node out of range");
    }
    if (!g.is_forest()) throw std::invalid_argument("path_to_farthest: graph has cycles");
    const Adjacency adj(g);
    std::vector<double> dist(g.nodes.size());
    std::vector<int> parent(g.nodes.size());
    tree_distances(adj, from, dist, parent);
    int far = from;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (dist[i] > dist[far] && !close_enough(dist[i], dist[far])) far = static_cast<int>(i);
    }
    GraphPath path;
    path.length = dist[far];
    for (int at = far; at >= 0; at = parent[at]) path.nodes.push_back(at);
    std::reverse(path.nodes.begin(), path.nodes.end());
    return path;
}

std::vector<Point> path_points(const SkeletonGraph& g, const GraphPath& path) {
    std::vector<Point> out;
    out.reserve(path.nodes.size());
    for (int i : path.nodes) out.push_back(g.nodes[i]);
    return out;
}

}  // namespace scribble
