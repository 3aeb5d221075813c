#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "stsal/volume.hpp"

namespace stsal {

/// Per-frame mean saliency, s(t) = 1/(MN) * sum_ij Z(i, j, t).
[[nodiscard]] std::vector<double> frame_scores(const SaliencyMap& z);

/// 1 where s(t) > threshold.
[[nodiscard]] std::vector<std::uint8_t> abnormal_frames(const std::vector<double>& scores, double threshold);

/// Voxels whose saliency exceeds k times the mean over the whole map.
[[nodiscard]] Mask abnormal_regions(const SaliencyMap& z, double k = 4.0);

/// `frame,score` with header.
void write_frame_scores_csv(std::ostream& out, const std::vector<double>& scores);

/// Reads `frame,label` rows (header optional) into a dense label series of
/// length `frames`. Every frame must be labelled exactly once.
[[nodiscard]] std::vector<std::uint8_t> read_frame_labels_csv(std::istream& in, std::size_t frames);

}  // namespace stsal
