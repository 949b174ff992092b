#include "scribble/mask/binary_mask.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace scribble {

BinaryMask::BinaryMask(int width, int height, bool fill)
    : width_(width), height_(height) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("BinaryMask: dimensions must be positive, got " +
                                    std::to_string(width) + "x" + std::to_string(height));
    }
    bits_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                 fill ? 1 : 0);
}

void BinaryMask::require_same_shape(const BinaryMask& other) const {
    if (!same_shape(other)) {
        throw std::invalid_argument("mask dimension mismatch: " + std::to_string(width_) + "x" +
                                    std::to_string(height_) + " vs " +
                                    std::to_string(other.width_) + "x" +
                                    std::to_string(other.height_));
    }
}

std::size_t BinaryMask::count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool BinaryMask::any() const {
    return std::find(bits_.begin(), bits_.end(), std::uint8_t{1}) != bits_.end();
}

void BinaryMask::fill(bool v) { std::fill(bits_.begin(), bits_.end(), v ? 1 : 0); }

bool BinaryMask::subset_of(const BinaryMask& other) const {
    require_same_shape(other);
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i] && !other.bits_[i]) return false;
    }
    return true;
}

bool BinaryMask::intersects(const BinaryMask& other) const {
    require_same_shape(other);
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i] && other.bits_[i]) return true;
    }
    return false;
}

std::vector<Point> BinaryMask::pixels() const {
    std::vector<Point> out;
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            if (get(x, y)) out.push_back({x, y});
        }
    }
    return out;
}

std::optional<Box> BinaryMask::bounding_box() const {
    int x0 = width_, y0 = height_, x1 = -1, y1 = -1;
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            if (!get(x, y)) continue;
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    if (x1 < 0) return std::nullopt;
    return Box{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

BinaryMask BinaryMask::operator~() const {
    BinaryMask out = *this;
    for (auto& b : out.bits_) b ^= 1;
    return out;
}

BinaryMask& BinaryMask::operator&=(const BinaryMask& other) {
    require_same_shape(other);
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= other.bits_[i];
    return *this;
}

BinaryMask& BinaryMask::operator|=(const BinaryMask& other) {
    require_same_shape(other);
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
    return *this;
}

BinaryMask& BinaryMask::operator^=(const BinaryMask& other) {
    require_same_shape(other);
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] ^= other.bits_[i];
    return *this;
}

BinaryMask& BinaryMask::operator-=(const BinaryMask& other) {
    require_same_shape(other);
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= static_cast<std::uint8_t>(!other.bits_[i]);
    return *this;
}

double iou(const BinaryMask& a, const BinaryMask& b) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument("iou: mask dimension mismatch");
    }
    std::size_t inter = 0;
    std::size_t uni = 0;
    const auto da = a.data();
    const auto db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i) {
        inter += da[i] & db[i];
        uni += da[i] | db[i];
    }
    if (uni == 0) return 1.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

BinaryMask crop(const BinaryMask& m, const Box& box) {
    const int x0 = std::max(box.x, 0);
    const int y0 = std::max(box.y, 0);
    const int x1 = std::min(box.right(), m.width());
    const int y1 = std::min(box.bottom(), m.height());
    if (x1 <= x0 || y1 <= y0) {
        throw std::invalid_argument("crop: box does not overlap the mask");
    }
    BinaryMask out(x1 - x0, y1 - y0);
    for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) out.set(x - x0, y - y0, m.get(x, y));
    }
    return out;
}

BinaryMask translate(const BinaryMask& m, int dx, int dy) {
    BinaryMask out(m.width(), m.height());
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) {
            if (m.get(x, y) && out.in_bounds(x + dx, y + dy)) out.set(x + dx, y + dy);
        }
    }
    return out;
}

}  // namespace scribble
