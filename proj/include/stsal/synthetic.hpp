#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stsal/saliency.hpp"
#include "stsal/volume.hpp"

namespace stsal {

/// Which motion property separates the target from the distractors.
enum class MotionKind {
    Flicker,    ///< parameter: on/off rate in Hz
    Direction,  ///< parameter: heading in radians (0 = +col, pi/2 = +row)
    Velocity,   ///< parameter: speed in px/frame
};

[[nodiscard]] std::string to_string(MotionKind k);
[[nodiscard]] MotionKind parse_motion_kind(const std::string& s);

/// One synthetic motion-saliency trial. Defaults give the 174x174x400 clip at
/// 60 fps with a 6x6 grid of 5x13 objects, each roaming a 29x29 cell.
struct TrialConfig {
    MotionKind kind = MotionKind::Flicker;
    double distractor_param = 1.0;
    double target_param = 1.0;
    std::uint64_t seed = 0;

    std::size_t frame_size = 174;
    std::size_t frames = 400;
    double fps = 60.0;
    std::size_t grid = 6;
    std::size_t object_rows = 5;
    std::size_t object_cols = 13;
    std::size_t roam = 29;

    /// Shared speed for Direction trials (px/frame).
    double speed = 1.0;
    /// Shared heading for Velocity trials (rad).
    double heading = 0.0;

    /// Blind trials: the target behaves exactly like every distractor.
    [[nodiscard]] bool blind() const noexcept { return target_param == distractor_param; }
    [[nodiscard]] std::size_t object_count() const noexcept { return grid * grid; }

    void validate() const;
};

/// Per-object parameters drawn from the seeded generator.
struct ObjectLayout {
    std::size_t target = 0;
    struct Object {
        std::size_t cell_row = 0;  ///< top-left pixel of the object's roam cell
        std::size_t cell_col = 0;
        double flicker_phase = 0.0;   ///< fraction of a cycle in [0, 1)
        std::size_t start_row = 0;    ///< offset within the roam cell, [0, roam)
        std::size_t start_col = 0;
        double param = 0.0;
    };
    std::vector<Object> objects;
};

[[nodiscard]] ObjectLayout draw_layout(const TrialConfig& cfg);

/// Object center, relative to its cell's top-left corner, at frame t. Coordinates
/// are unwrapped; the renderer wraps them into the cell.
struct ObjectPose {
    bool visible = true;
    double row = 0.0;
    double col = 0.0;
};
[[nodiscard]] ObjectPose object_pose(const TrialConfig& cfg, const ObjectLayout::Object& obj, std::size_t t);

struct Trial {
    Volume video;  ///< 0 background, 1 object pixels
    Mask target;   ///< target footprint in every frame, visible or not
    std::size_t target_index = 0;
};

/// Deterministic: identical configs produce bit-identical volumes.
[[nodiscard]] Trial generate_trial(const TrialConfig& cfg);

/// One benchmark condition; seeds are supplied separately.
struct BenchmarkCondition {
    MotionKind kind;
    double distractor;
    double target;
};

struct BenchmarkRow {
    MotionKind kind;
    double distractor;
    double target;
    std::uint64_t seed;
    double auc;
};

struct BenchmarkOptions {
    TrialConfig base;  ///< geometry, speed and heading; kind/params/seed are overwritten
    SmoothSpec smooth;
};

/// Full-span saliency AUC against the target mask for every (condition, seed).
[[nodiscard]] std::vector<BenchmarkRow> run_benchmark(std::span<const BenchmarkCondition> conditions,
                                                      std::span<const std::uint64_t> seeds,
                                                      const BenchmarkOptions& opts = {});

/// Cross product of kinds and (distractor, target) pairs.
[[nodiscard]] std::vector<BenchmarkRow> run_benchmark(std::span<const MotionKind> kinds,
                                                      std::span<const std::pair<double, double>> param_grid,
                                                      std::span<const std::uint64_t> seeds,
                                                      const BenchmarkOptions& opts = {});

/// AUC of a saliency map against a mask, over all voxels.
[[nodiscard]] double mask_auc(const SaliencyMap& z, const Mask& mask);

/// `kind,distractor,target,seed,auc` with header.
void write_benchmark_csv(std::ostream& out, std::span<const BenchmarkRow> rows);

}  // namespace stsal
