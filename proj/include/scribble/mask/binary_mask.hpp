#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace scribble {

/// Integer pixel coordinate. `x` is the column, `y` the row.
struct Point {
    int x = 0;
    int y = 0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Row-major ordering: smaller row first, then smaller column.
inline bool raster_less(const Point& a, const Point& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
}

/// Axis-aligned pixel box, half-open: [x, x + width) × [y, y + height).
struct Box {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;

    int right() const { return x + width; }
    int bottom() const { return y + height; }
    bool contains(int px, int py) const {
        return px >= x && px < right() && py >= y && py < bottom();
    }
    friend bool operator==(const Box&, const Box&) = default;
};

/// W×H bit raster stored one byte per pixel (0 or 1).
class BinaryMask {
public:
    BinaryMask(int width, int height, bool fill = false);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return bits_.size(); }

    bool in_bounds(int x, int y) const {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    bool get(int x, int y) const { return bits_[index(x, y)] != 0; }
    bool get(Point p) const { return get(p.x, p.y); }
    /// Out-of-bounds reads return false.
    bool get_or_false(int x, int y) const { return in_bounds(x, y) && get(x, y); }
    void set(int x, int y, bool v = true) { bits_[index(x, y)] = v ? 1 : 0; }
    void set(Point p, bool v = true) { set(p.x, p.y, v); }

    bool operator[](std::size_t i) const { return bits_[i] != 0; }
    std::span<const std::uint8_t> data() const { return bits_; }
    std::span<std::uint8_t> data() { return bits_; }

    std::size_t count() const;
    bool any() const;
    bool none() const { return !any(); }
    void fill(bool v);

    bool same_shape(const BinaryMask& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }
    bool subset_of(const BinaryMask& other) const;
    bool intersects(const BinaryMask& other) const;

    /// True pixels in raster order.
    std::vector<Point> pixels() const;
    /// Tight bounding box of the true pixels; nullopt when empty.
    std::optional<Box> bounding_box() const;

    BinaryMask operator~() const;
    BinaryMask& operator&=(const BinaryMask& other);
    BinaryMask& operator|=(const BinaryMask& other);
    BinaryMask& operator^=(const BinaryMask& other);
    /// Set difference: clears every pixel that is true in `other`.
    BinaryMask& operator-=(const BinaryMask& other);

    friend BinaryMask operator&(BinaryMask a, const BinaryMask& b) { return a &= b; }
    friend BinaryMask operator|(BinaryMask a, const BinaryMask& b) { return a |= b; }
    friend BinaryMask operator^(BinaryMask a, const BinaryMask& b) { return a ^= b; }
    friend BinaryMask operator-(BinaryMask a, const BinaryMask& b) { return a -= b; }
    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
    void require_same_shape(const BinaryMask& other) const;

    int width_;
    int height_;
    std::vector<std::uint8_t> bits_;
};

/// |a ∩ b| / |a ∪ b|; 1.0 when both are empty. Throws on dimension mismatch.
double iou(const BinaryMask& a, const BinaryMask& b);

/// Copy of `m` restricted to `box` (box clipped to the mask).
BinaryMask crop(const BinaryMask& m, const Box& box);

/// Shifts the mask content by (dx, dy); pixels moved off-canvas are dropped.
BinaryMask translate(const BinaryMask& m, int dx, int dy);

}  // namespace scribble
