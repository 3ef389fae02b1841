// Reference scorer adapter: speaks the line-oriented scorer protocol and
// reproduces the synthetic generator's frame scores for a given seed, so the
// subprocess path can be cross-checked against in-process generation. Each
// stdin line triggers the next frame of the configured video; line content
// is treated as an opaque frame reference.

#include <CLI11.hpp>
#include <charconv>
#include <cstdio>
#include <iostream>
#include <string>

#include "boa/synth.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Synthetic reference scorer adapter"};
  boa::SynthConfig cfg;
  std::string role_str = "positive";
  int event_idx = 0, video_ordinal = 0;
  app.add_option("--seed", cfg.seed, "Generator seed");
  app.add_option("--events", cfg.events, "Event count");
  app.add_option("--dim", cfg.dim, "Attribute count");
  app.add_option("--signature-size", cfg.signature_size, "Attributes per event");
  app.add_option("--sigma", cfg.sigma, "Gaussian noise level");
  app.add_option("--overlap", cfg.overlap, "Signature overlap fraction");
  app.add_option("--event", event_idx, "Event index (0-based)");
  app.add_option("--role", role_str, "query|positive|negative")
      ->check(CLI::IsMember({"query", "positive", "negative"}));
  app.add_option("--video", video_ordinal, "Video ordinal within event/role");
  CLI11_PARSE(app, argc, argv);

  boa::VideoRole role = role_str == "query" ? boa::VideoRole::query
                        : role_str == "positive" ? boa::VideoRole::positive
                                                 : boa::VideoRole::negative;
  try {
    boa::validate_config(cfg);
    std::string line;
    int frame = 0;
    char buf[64];
    while (std::getline(std::cin, line)) {
      boa::VecF v = boa::synth_frame_scores(cfg, event_idx, role, video_ordinal, frame++);
      std::string out;
      for (int j = 0; j < v.size(); ++j) {
        if (j) out += ' ';
        auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v(j));
        out.append(buf, p);
      }
      out += '\n';
      std::fwrite(out.data(), 1, out.size(), stdout);
      std::fflush(stdout);
    }
  } catch (const std::exception& e) {
    std::cerr << "synth-scorer: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
