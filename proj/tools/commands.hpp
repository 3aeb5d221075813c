#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stsal::cli {

/// Thrown for bad flag values; main() maps it to exit code 2.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Flags shared by every command that computes a saliency volume.
struct SaliencyFlags {
    std::string input;
    std::size_t window_length = 0;  // 0: full span
    std::size_t window_hop = 0;     // 0: same as length
    double sigma_spatial = 3.0;
    double sigma_temporal = 1.5;
    std::size_t downsample = 1;
    std::string color = "gray";
    std::vector<double> weights;
};

struct SaliencyCommand {
    SaliencyFlags flags;
    std::string output;
    std::string pgm_dir;
    std::string dtype = "f64";
};

struct SynthCommand {
    // single trial
    std::string kind = "flicker";
    double distractor = 1.0;
    double target = 4.0;
    bool blind = false;
    std::uint64_t seed = 0;
    std::string video;
    std::string mask;
    // benchmark grid
    std::string csv;
    std::vector<std::string> kinds;
    std::vector<std::string> pairs;
    std::vector<std::uint64_t> seeds;
    double sigma_spatial = 3.0;
    double sigma_temporal = 1.5;
    // geometry
    std::size_t frame_size = 174;
    std::size_t frames = 400;
    double fps = 60.0;
    std::size_t grid = 6;
    std::size_t object_rows = 5;
    std::size_t object_cols = 13;
    std::size_t roam = 29;
    double speed = 1.0;
    double heading = 0.0;
};

struct AnomalyCommand {
    SaliencyFlags flags;
    std::string out_dir;
    double k = 4.0;
    std::string labels;
};

struct StipCommand {
    SaliencyFlags flags;
    std::string out_dir;
    std::string source = "video";
    std::optional<double> rho;
    double rho_mult = 2.0;
    std::size_t rx = 5;
    std::size_t ry = 5;
    std::size_t rt = 3;
    std::vector<std::string> scales{"18x10", "25x14", "36x20"};
};

struct QftCommand {
    std::size_t trials = 100;
    std::size_t min_size = 8;
    std::size_t max_size = 128;
    double sigma = 2.0;
    std::uint64_t seed = 0;
    std::string output;
};

struct EvalCommand {
    std::string scores;        // score,label CSV
    std::string saliency;      // VOL1 saliency volume
    std::string mask;          // VOL1 mask, nonzero = positive
    std::string frame_scores;  // frame,score CSV
    std::string labels;        // frame,label CSV
    std::string roc;
    std::string output;
    std::string f_mode = "pr";
    std::optional<double> threshold;
};

/// `argv` is echoed into the sidecar metadata so a run can be repeated.
void run_saliency(const SaliencyCommand& cmd, const std::vector<std::string>& argv);
void run_synth(const SynthCommand& cmd, const std::vector<std::string>& argv);
void run_anomaly(const AnomalyCommand& cmd, const std::vector<std::string>& argv);
void run_stip(const StipCommand& cmd, const std::vector<std::string>& argv);
void run_qft(const QftCommand& cmd, const std::vector<std::string>& argv);
void run_eval(const EvalCommand& cmd, const std::vector<std::string>& argv);

}  // namespace stsal::cli
