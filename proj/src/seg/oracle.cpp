#include "scribble/seg/oracle.hpp"

#include <stdexcept>

#include "scribble/seg/resample.hpp"

namespace scribble {
namespace {

BinaryMask make_answer(BinaryMask gt, double noise, std::uint64_t seed, const PerturbConfig& cfg) {
    if (noise < 0.0) throw std::invalid_argument("oracle noise must be >= 0");
    if (noise == 0.0 || gt.none()) return gt;
    Rng rng(seed);
    return apply_perturbation(gt, sample_perturbation(gt, cfg, rng, noise));
}

}  // namespace

OracleSegmenter::OracleSegmenter(BinaryMask gt, double noise, std::uint64_t seed,
                                 const PerturbConfig& perturb)
    : answer_(make_answer(std::move(gt), noise, seed, perturb)) {}

BinaryMask OracleSegmenter::predict(const SegmentationRequest& request) const {
    request.validate();
    const auto& c = request.crop;
    if (c.box.right() > answer_.width() || c.box.bottom() > answer_.height() ||
        c.target_width != request.width() || c.target_height != request.height()) {
        throw std::invalid_argument("oracle: request does not match the ground-truth frame");
    }
    return resample_nearest(answer_, c.box, c.target_width, c.target_height);
}

BinaryMask oracle_predict(const SegmentationRequest& request, const BinaryMask& gt, double noise,
                          std::uint64_t seed) {
    return OracleSegmenter(gt, noise, seed).predict(request);
}

}  // namespace scribble
