#pragma once

#include <cstdint>
#include <vector>

#include "boa/ingest.hpp"
#include "boa/types.hpp"

namespace boa {

// Per-event query/database counts; overrides the uniform per-event counts
// when a dataset should mimic an existing benchmark's shape.
struct SynthEventShape {
  int queries = 0;
  int positives = 0;
  int negatives = 0;
};

struct SynthConfig {
  int events = 13;
  int dim = 64;
  int signature_size = 4;  // attributes characteristic of one event
  int queries_per_event = 3;
  int positives_per_event = 6;
  int negatives_per_event = 10;
  int frames_min = 2;
  int frames_max = 4;
  double sigma = 0.0;     // Gaussian noise, clipped to [0,1]
  double overlap = 0.0;   // fraction of signature shared with the next event
  std::uint64_t seed = 0;
  double base_hi = 0.9;   // activation on signature attributes
  double base_lo = 0.05;  // activation elsewhere
  std::vector<SynthEventShape> per_event;  // optional, size == events
};

enum class VideoRole : int { query = 0, positive = 1, negative = 2 };

struct SynthOutput {
  DatasetManifest manifest;
  std::vector<FrameScoreFile> scores;  // one per video, manifest order
};

void validate_config(const SynthConfig& cfg);

// Attribute indices characteristic of one event; consecutive events overlap
// by the configured fraction.
std::vector<int> event_signature(const SynthConfig& cfg, int event_idx);

int frame_count_for(const SynthConfig& cfg, int event_idx, VideoRole role,
                    int video_ordinal);

// One frame's scores. Pure function of (config, event, role, ordinal, frame),
// which is what lets the reference scorer adapter reproduce generator output
// from the same seed.
VecF synth_frame_scores(const SynthConfig& cfg, int event_idx, VideoRole role,
                        int video_ordinal, int frame_idx);

MatF synth_video_scores(const SynthConfig& cfg, int event_idx, VideoRole role,
                        int video_ordinal);

std::string synth_video_id(int event_idx, VideoRole role, int video_ordinal);

SynthOutput generate(const SynthConfig& cfg);

}  // namespace boa
