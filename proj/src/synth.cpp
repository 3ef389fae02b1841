#include "boa/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "boa/rng.hpp"

namespace boa {

namespace {

int signature_stride(const SynthConfig& cfg) {
  return static_cast<int>(std::llround(cfg.signature_size * (1.0 - cfg.overlap)));
}

SynthEventShape shape_for(const SynthConfig& cfg, int event_idx) {
  if (!cfg.per_event.empty()) return cfg.per_event[std::size_t(event_idx)];
  return {cfg.queries_per_event, cfg.positives_per_event, cfg.negatives_per_event};
}

std::uint64_t video_key(const SynthConfig& cfg, int event_idx, VideoRole role,
                        int video_ordinal) {
  std::uint64_t k = mix_key(cfg.seed, std::uint64_t(event_idx));
  return mix_key(k, std::uint64_t(video_ordinal) * 4u + std::uint64_t(role));
}

// Negatives borrow the signature of some other event, so they look like real
// videos of an unrelated topic rather than pure noise. With a single event
// they carry no signature at all.
int negative_source_event(const SynthConfig& cfg, int event_idx, int video_ordinal) {
  if (cfg.events <= 1) return -1;
  return (event_idx + 1 + video_ordinal % (cfg.events - 1)) % cfg.events;
}

}  // namespace

void validate_config(const SynthConfig& cfg) {
  if (cfg.events < 1 || cfg.dim < 1 || cfg.signature_size < 1)
    throw ConfigError("synth: events, dim and signature size must be >= 1");
  if (cfg.signature_size > cfg.dim)
    throw ConfigError("synth: signature size exceeds dim");
  if (cfg.frames_min < 1 || cfg.frames_max < cfg.frames_min)
    throw ConfigError("synth: invalid frames-per-video range");
  if (cfg.sigma < 0) throw ConfigError("synth: sigma must be non-negative");
  if (cfg.overlap < 0 || cfg.overlap > 1)
    throw ConfigError("synth: overlap must be in [0,1]");
  if (!cfg.per_event.empty() &&
      cfg.per_event.size() != std::size_t(cfg.events))
    throw ConfigError("synth: per-event shape list must match event count");
  for (int e = 0; e < cfg.events; ++e) {
    auto s = shape_for(cfg, e);
    if (s.queries < 1 || s.positives < 1 || s.negatives < 0)
      throw ConfigError("synth: each event needs >= 1 query and >= 1 positive");
  }
  int last_start = (cfg.events - 1) * signature_stride(cfg);
  if (last_start + cfg.signature_size > cfg.dim)
    throw ConfigError("synth: infeasible signature allocation: " +
                      std::to_string(cfg.events) + " events of size " +
                      std::to_string(cfg.signature_size) + " with overlap " +
                      std::to_string(cfg.overlap) + " need dim >= " +
                      std::to_string(last_start + cfg.signature_size));
}

std::vector<int> event_signature(const SynthConfig& cfg, int event_idx) {
  int start = event_idx * signature_stride(cfg);
  std::vector<int> sig(std::size_t(cfg.signature_size));
  for (int i = 0; i < cfg.signature_size; ++i) sig[std::size_t(i)] = start + i;
  return sig;
}

int frame_count_for(const SynthConfig& cfg, int event_idx, VideoRole role,
                    int video_ordinal) {
  CounterRng rng(mix_key(video_key(cfg, event_idx, role, video_ordinal), 0xF00Dull));
  int span = cfg.frames_max - cfg.frames_min + 1;
  return cfg.frames_min + int(rng.next_below(std::uint64_t(span)));
}

VecF synth_frame_scores(const SynthConfig& cfg, int event_idx, VideoRole role,
                        int video_ordinal, int frame_idx) {
  std::vector<int> sig;
  if (role == VideoRole::negative) {
    int src = negative_source_event(cfg, event_idx, video_ordinal);
    if (src >= 0) sig = event_signature(cfg, src);
  } else {
    sig = event_signature(cfg, event_idx);
  }
  CounterRng rng(mix_key(video_key(cfg, event_idx, role, video_ordinal),
                         std::uint64_t(frame_idx)));
  VecF v = VecF::Constant(cfg.dim, float(cfg.base_lo));
  for (int i : sig) v(i) = float(cfg.base_hi);
  for (int j = 0; j < cfg.dim; ++j) {
    double g = rng.next_gaussian();  // drawn even at sigma=0 to keep streams aligned
    double x = double(v(j)) + cfg.sigma * g;
    v(j) = float(std::clamp(x, 0.0, 1.0));
  }
  return v;
}

MatF synth_video_scores(const SynthConfig& cfg, int event_idx, VideoRole role,
                        int video_ordinal) {
  int n = frame_count_for(cfg, event_idx, role, video_ordinal);
  MatF m(n, cfg.dim);
  for (int f = 0; f < n; ++f)
    m.row(f) = synth_frame_scores(cfg, event_idx, role, video_ordinal, f).transpose();
  return m;
}

std::string synth_video_id(int event_idx, VideoRole role, int video_ordinal) {
  char role_ch = role == VideoRole::query ? 'q' : role == VideoRole::positive ? 'p' : 'n';
  char buf[32];
  std::snprintf(buf, sizeof(buf), "e%02d_%c%03d", event_idx + 1, role_ch, video_ordinal);
  return buf;
}

SynthOutput generate(const SynthConfig& cfg) {
  validate_config(cfg);
  SynthOutput out;
  for (int e = 0; e < cfg.events; ++e) {
    auto shape = shape_for(cfg, e);
    EventSpec ev;
    ev.event_id = "event" + std::to_string(e + 1);
    auto emit = [&](VideoRole role, int ordinal) {
      FrameScoreFile f;
      f.video_id = synth_video_id(e, role, ordinal);
      f.rows = synth_video_scores(cfg, e, role, ordinal);
      out.scores.push_back(std::move(f));
      return out.scores.back().video_id;
    };
    for (int q = 0; q < shape.queries; ++q)
      ev.queries.push_back(emit(VideoRole::query, q));
    for (int p = 0; p < shape.positives; ++p)
      ev.database.emplace_back(emit(VideoRole::positive, p), Relevance::positive);
    for (int n = 0; n < shape.negatives; ++n)
      ev.database.emplace_back(emit(VideoRole::negative, n), Relevance::negative);
    out.manifest.events.push_back(std::move(ev));
  }
  validate_manifest(out.manifest);
  return out;
}

}  // namespace boa
