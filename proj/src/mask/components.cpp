#include "scribble/mask/components.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace scribble {
namespace {

class DisjointSets {
public:
    int make() {
        parent_.push_back(static_cast<int>(parent_.size()));
        return parent_.back();
    }
    int find(int a) {
        while (parent_[a] != a) {
            parent_[a] = parent_[parent_[a]];
            a = parent_[a];
        }
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) std::swap(a, b);
        parent_[a] = b;
    }

private:
    std::vector<int> parent_;
};

}  // namespace

int LabeledRegions::largest() const {
    int best = 0;
    std::size_t best_size = 0;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        const bool bigger = sizes[k] > best_size;
        const bool tie_earlier = sizes[k] == best_size && best != 0 &&
                                 raster_less(first_pixel[k], first_pixel[best - 1]);
        if (bigger || tie_earlier) {
            best = static_cast<int>(k) + 1;
            best_size = sizes[k];
        }
    }
    return best;
}

BinaryMask LabeledRegions::region(int label) const {
    BinaryMask out(labels.width, labels.height);
    auto bits = out.data();
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = labels.values[i] == label ? 1 : 0;
    return out;
}

LabeledRegions connected_components(const BinaryMask& m, Connectivity connectivity) {
    const int w = m.width();
    const int h = m.height();
    std::vector<int> provisional(m.size(), -1);
    DisjointSets sets;

    // First pass: provisional labels from already-visited neighbors.
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!m.get(x, y)) continue;
            int label = -1;
            auto visit = [&](int nx, int ny) {
                if (!m.get_or_false(nx, ny)) return;
                const int other = provisional[m.index(nx, ny)];
                if (label < 0) {
                    label = other;
                } else {
                    sets.unite(label, other);
                }
            };
            visit(x - 1, y);
            visit(x, y - 1);
            if (connectivity == Connectivity::eight) {
                visit(x - 1, y - 1);
                visit(x + 1, y - 1);
            }
            provisional[m.index(x, y)] = label < 0 ? sets.make() : label;
        }
    }

    // Second pass: resolve and renumber in raster order of first appearance.
    LabeledRegions out;
    out.labels = Raster<int>{w, h, std::vector<int>(m.size(), 0)};
    std::vector<int> final_label;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = m.index(x, y);
            if (provisional[i] < 0) continue;
            const int root = sets.find(provisional[i]);
            if (static_cast<std::size_t>(root) >= final_label.size()) {
                final_label.resize(root + 1, 0);
            }
            if (final_label[root] == 0) {
                out.sizes.push_back(0);
                out.first_pixel.push_back({x, y});
                final_label[root] = static_cast<int>(out.sizes.size());
            }
            const int label = final_label[root];
            out.labels.values[i] = label;
            ++out.sizes[label - 1];
        }
    }
    return out;
}

std::optional<BinaryMask> largest_component(const BinaryMask& m, Connectivity connectivity) {
    const auto regions = connected_components(m, connectivity);
    const int label = regions.largest();
    if (label == 0) return std::nullopt;
    return regions.region(label);
}

LabeledRegions label_error_regions(const BinaryMask& gt, const BinaryMask& pred,
                                   Connectivity connectivity) {
    if (!gt.same_shape(pred)) {
        throw std::invalid_argument("label_error_regions: mask dimension mismatch");
    }
    const auto fn = connected_components(gt - pred, connectivity);
    const auto fp = connected_components(pred - gt, connectivity);

    struct Entry {
        Point first;
        ErrorKind kind;
        int source_label;
    };
    std::vector<Entry> entries;
    for (std::size_t k = 0; k < fn.count(); ++k) {
        entries.push_back({fn.first_pixel[k], ErrorKind::false_negative, static_cast<int>(k) + 1});
    }
    for (std::size_t k = 0; k < fp.count(); ++k) {
        entries.push_back({fp.first_pixel[k], ErrorKind::false_positive, static_cast<int>(k) + 1});
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return raster_less(a.first, b.first); });

    std::vector<int> fn_map(fn.count() + 1, 0), fp_map(fp.count() + 1, 0);
    LabeledRegions out;
    out.labels = Raster<int>{gt.width(), gt.height(), std::vector<int>(gt.size(), 0)};
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        const bool is_fn = e.kind == ErrorKind::false_negative;
        (is_fn ? fn_map : fp_map)[e.source_label] = static_cast<int>(i) + 1;
        out.sizes.push_back(is_fn ? fn.sizes[e.source_label - 1] : fp.sizes[e.source_label - 1]);
        out.first_pixel.push_back(e.first);
        out.polarity.push_back(e.kind);
    }
    for (std::size_t i = 0; i < out.labels.values.size(); ++i) {
        if (const int a = fn.labels.values[i]; a != 0) {
            out.labels.values[i] = fn_map[a];
        } else if (const int b = fp.labels.values[i]; b != 0) {
            out.labels.values[i] = fp_map[b];
        }
    }
    return out;
}

}  // namespace scribble
