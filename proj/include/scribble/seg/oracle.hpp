#pragma once

#include <cstdint>

#include "scribble/mask/binary_mask.hpp"
#include "scribble/seg/segmenter.hpp"
#include "scribble/train/train_sim.hpp"

namespace scribble {

/// Harness self-test segmenter: answers every request with the ground truth
/// (noise 0) or a fixed perturbation of it whose magnitude scales with `noise`.
/// Requests are mapped back to the full frame through their crop descriptor,
/// so it is exact under zoom-in at native resolution.
class OracleSegmenter final : public Segmenter {
public:
    explicit OracleSegmenter(BinaryMask gt, double noise = 0.0, std::uint64_t seed = 0,
                             const PerturbConfig& perturb = {});

    BinaryMask predict(const SegmentationRequest& request) const override;
    std::string name() const override { return "oracle"; }

    const BinaryMask& answer() const { return answer_; }

private:
    BinaryMask answer_;
};

/// One-shot form of OracleSegmenter.
BinaryMask oracle_predict(const SegmentationRequest& request, const BinaryMask& gt, double noise,
                          std::uint64_t seed = 0);

}  // namespace scribble
