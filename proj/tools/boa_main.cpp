#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "boa/core.hpp"
#include "boa/eval.hpp"
#include "boa/ingest.hpp"
#include "boa/parallel.hpp"
#include "boa/report.hpp"
#include "boa/retrieval.hpp"
#include "boa/scorer.hpp"
#include "boa/store.hpp"
#include "boa/synth.hpp"
#include "boa/version.hpp"

namespace {

using namespace boa;

struct ModeFlags {
  std::string coding = "soft";
  std::string pooling = "max";
  std::string norm = "none";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--coding", coding, "Coding mode: soft|hard")
        ->check(CLI::IsMember({"soft", "hard"}));
    cmd->add_option("--pooling", pooling, "Pooling mode: max|avg|sum")
        ->check(CLI::IsMember({"max", "avg", "sum"}));
    cmd->add_option("--norm", norm, "Normalization: none|l1|l2")
        ->check(CLI::IsMember({"none", "l1", "l2"}));
  }
  Provenance provenance() const {
    return {coding_from_string(coding), pooling_from_string(pooling),
            norm_from_string(norm)};
  }
};

std::string format_ts(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

int cmd_sample_plan(double duration, double rate) {
  SamplePlan plan = sample_plan(duration, rate);
  for (double t : plan.timestamps) std::cout << format_ts(t) << "\n";
  return 0;
}

int cmd_score(const std::string& adapter, int dim, const std::string& refs_path,
              const std::string& video_id, const std::string& out_path,
              const std::string& format) {
  std::vector<std::string> refs;
  {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (!refs_path.empty() && refs_path != "-") {
      file.open(refs_path);
      if (!file) throw IoError("cannot open " + refs_path);
      in = &file;
    }
    std::string line;
    while (std::getline(*in, line))
      if (!line.empty()) refs.push_back(line);
  }
  Mat scores = run_scorer(adapter, refs, dim);
  FrameScoreFile f;
  f.video_id = video_id;
  f.rows = scores.cast<float>();
  ScoreEncoding enc = ScoreEncoding::boaf;
  if (format == "csv" || (format.empty() && out_path.size() > 4 &&
                          out_path.substr(out_path.size() - 4) == ".csv"))
    enc = ScoreEncoding::csv;
  write_frame_scores(f, out_path, enc);
  std::cerr << "scored " << refs.size() << " frames -> " << out_path << "\n";
  return 0;
}

int cmd_synth(const SynthConfig& cfg, const std::string& counts_path,
              const std::string& out_dir) {
  SynthConfig config = cfg;
  if (!counts_path.empty()) {
    std::ifstream in(counts_path);
    if (!in) throw IoError("cannot open " + counts_path);
    std::string line;
    config.per_event.clear();
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      SynthEventShape s;
      if (std::sscanf(line.c_str(), "%d,%d,%d", &s.queries, &s.positives,
                      &s.negatives) != 3)
        throw FormatError(counts_path + ": expected q,pos,neg per line");
      config.per_event.push_back(s);
    }
    config.events = int(config.per_event.size());
  }
  SynthOutput out = generate(config);
  std::filesystem::create_directories(out_dir);
  write_manifest(out.manifest, std::filesystem::path(out_dir) / "manifest.txt");
  for (const auto& f : out.scores)
    write_frame_scores(f, std::filesystem::path(out_dir) / (f.video_id + ".boaf"));
  std::cerr << "generated " << out.scores.size() << " videos across "
            << out.manifest.events.size() << " events in " << out_dir << "\n";
  return 0;
}

int cmd_index(const std::string& manifest_path, const std::string& scores_dir,
              const ModeFlags& modes, const std::string& out_path, int workers) {
  DatasetManifest manifest = parse_manifest(manifest_path);
  Provenance prov = modes.provenance();
  BoaStore store = build_store(manifest, directory_score_source(scores_dir), prov.coding,
                               prov.pooling, prov.norm, workers);
  save_store(store, out_path);
  std::cerr << "indexed " << store.entries.size() << " videos (dim " << store.dim
            << ") -> " << out_path << "\n";
  return 0;
}

int cmd_query(const std::string& store_path, const std::string& manifest_path,
              const std::string& out_path, const std::string& event_filter,
              const ModeFlags* expected, int workers) {
  std::optional<Provenance> expect;
  if (expected) expect = expected->provenance();
  BoaStore store = load_store(store_path, expect);
  DatasetManifest manifest = parse_manifest(manifest_path);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path, std::ios::binary);
    if (!file) throw IoError("cannot write " + out_path);
    out = &file;
  }
  for (const auto& event : manifest.events) {
    if (!event_filter.empty() && event.event_id != event_filter) continue;
    write_ranked_lists(query_event(event, store, workers), *out);
  }
  return 0;
}

int cmd_evaluate(const std::string& manifest_path, const std::string& ranked_path,
                 const std::string& method_name, const std::string& out_dir) {
  DatasetManifest manifest = parse_manifest(manifest_path);
  std::ifstream in(ranked_path);
  if (!in) throw IoError("cannot open " + ranked_path);
  auto lists = read_ranked_lists(in, ranked_path);
  EvalReport report = evaluate(manifest, lists);
  for (const auto& ev : report.events) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", ev.map * 100.0);
    std::cout << ev.event_id << "\t" << buf << "\n";
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", report.avg_map * 100.0);
  std::cout << "avg-mAP: " << buf << "\n";
  if (!out_dir.empty()) emit_report(table_from_report(report, method_name), {}, out_dir);
  return 0;
}

int cmd_ttest(const std::string& a_path, const std::string& b_path, double alpha) {
  auto a = read_metric_column(a_path);
  auto b = read_metric_column(b_path);
  std::map<std::string, double> b_by_id(b.begin(), b.end());
  std::vector<double> xs, ys;
  for (const auto& [id, v] : a) {
    auto it = b_by_id.find(id);
    if (it == b_by_id.end())
      throw InvalidInputError("event \"" + id + "\" present in " + a_path +
                              " but not in " + b_path);
    xs.push_back(v);
    ys.push_back(it->second);
  }
  if (xs.size() != b.size())
    throw InvalidInputError("metric columns do not cover the same events");
  ConfidenceInterval ci = paired_ttest(xs, ys, alpha);
  std::printf("n: %d\nmean-diff: %.6f\nt-statistic: %.6f\ndf: %d\n", int(xs.size()),
              ci.mean_diff, ci.t_statistic, ci.df);
  std::printf("ci: [%.6f, %.6f] (alpha=%g)\n", ci.lower, ci.upper, ci.alpha);
  std::printf("significant: %s\n", ci.includes_zero() ? "no" : "yes");
  return 0;
}

int cmd_report(const std::vector<std::string>& method_args,
               const std::vector<std::string>& avg_args, double alpha,
               const std::string& out_dir) {
  ReportTable table;
  for (const auto& arg : method_args) {
    auto eq = arg.find('=');
    if (eq == std::string::npos)
      throw InvalidInputError("--method expects NAME=FILE, got \"" + arg + "\"");
    MethodColumn col;
    col.name = arg.substr(0, eq);
    auto rows = read_metric_column(arg.substr(eq + 1));
    if (table.event_ids.empty())
      for (const auto& [id, v] : rows) table.event_ids.push_back(id);
    if (rows.size() != table.event_ids.size())
      throw InvalidInputError("method \"" + col.name + "\" has a different event count");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].first != table.event_ids[i])
        throw InvalidInputError("method \"" + col.name + "\": event order differs at \"" +
                                rows[i].first + "\"");
      col.per_event_map.push_back(rows[i].second);
    }
    table.methods.push_back(std::move(col));
  }
  if (table.methods.empty()) throw InvalidInputError("report: no --method columns given");
  for (const auto& arg : avg_args) {
    auto eq = arg.find('=');
    if (eq == std::string::npos)
      throw InvalidInputError("--avg expects NAME=VALUE, got \"" + arg + "\"");
    std::string name = arg.substr(0, eq);
    bool found = false;
    for (auto& m : table.methods)
      if (m.name == name) {
        m.avg_map = std::stod(arg.substr(eq + 1));
        found = true;
      }
    if (!found) throw InvalidInputError("--avg names unknown method \"" + name + "\"");
  }
  // The last column is the method under test; earlier columns are baselines.
  std::vector<NamedInterval> comparisons;
  const auto& subject = table.methods.back();
  for (std::size_t i = 0; i + 1 < table.methods.size(); ++i) {
    const auto& base = table.methods[i];
    comparisons.push_back({subject.name + " - " + base.name,
                           paired_ttest(subject.per_event_map, base.per_event_map,
                                        alpha)});
  }
  emit_report(table, comparisons, out_dir);
  std::cerr << "report written to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bag-of-attributes video event retrieval pipeline"};
  app.require_subcommand(1);
  app.set_version_flag("--version", boa::kToolVersion);
  int workers = 0;

  auto* sp = app.add_subcommand("sample-plan", "Emit frame timestamps for a video");
  double duration = 0, rate = 1.0;
  sp->add_option("--duration", duration, "Video duration in seconds")->required();
  sp->add_option("--rate", rate, "Sampling rate in Hz");

  auto* sc = app.add_subcommand("score", "Drive a scorer adapter over frame references");
  std::string adapter, refs_path, video_id, score_out, score_format;
  int dim = 0;
  sc->add_option("--adapter", adapter, "Adapter command (run via /bin/sh -c)")->required();
  sc->add_option("--dim", dim, "Attribute count")->required();
  sc->add_option("--refs", refs_path, "Frame references file, one per line (- = stdin)");
  sc->add_option("--video-id", video_id, "Video id to record")->required();
  sc->add_option("--out", score_out, "Output frame-score file")->required();
  sc->add_option("--format", score_format, "boaf|csv (default from extension)")
      ->check(CLI::IsMember({"boaf", "csv"}));

  auto* sy = app.add_subcommand("synth", "Generate a synthetic event dataset");
  SynthConfig synth_cfg;
  std::string counts_path, synth_out;
  sy->add_option("--seed", synth_cfg.seed, "Generator seed");
  sy->add_option("--events", synth_cfg.events, "Event count");
  sy->add_option("--dim", synth_cfg.dim, "Attribute count");
  sy->add_option("--signature-size", synth_cfg.signature_size, "Attributes per event");
  sy->add_option("--queries", synth_cfg.queries_per_event, "Queries per event");
  sy->add_option("--positives", synth_cfg.positives_per_event, "Positives per event");
  sy->add_option("--negatives", synth_cfg.negatives_per_event, "Negatives per event");
  sy->add_option("--frames-min", synth_cfg.frames_min, "Min frames per video");
  sy->add_option("--frames-max", synth_cfg.frames_max, "Max frames per video");
  sy->add_option("--sigma", synth_cfg.sigma, "Gaussian noise level");
  sy->add_option("--overlap", synth_cfg.overlap, "Signature overlap fraction");
  sy->add_option("--counts", counts_path, "Per-event q,pos,neg counts file");
  sy->add_option("--out-dir", synth_out, "Output directory")->required();

  auto* ix = app.add_subcommand("index", "Build and save a BoA store");
  std::string ix_manifest, ix_scores, ix_out;
  ModeFlags ix_modes;
  ix->add_option("--manifest", ix_manifest, "Dataset manifest")->required();
  ix->add_option("--scores", ix_scores, "Directory of frame-score files")->required();
  ix_modes.add_to(ix);
  ix->add_option("--out", ix_out, "Output store file")->required();
  ix->add_option("--workers", workers, "Worker threads (0 = auto)");

  auto* qu = app.add_subcommand("query", "Rank per-event databases for every query");
  std::string qu_store, qu_manifest, qu_out = "-", qu_event;
  ModeFlags qu_modes;
  bool qu_has_modes = false;
  qu->add_option("--store", qu_store, "BoA store file")->required();
  qu->add_option("--manifest", qu_manifest, "Dataset manifest")->required();
  qu->add_option("--out", qu_out, "Ranked-list output (- = stdout)");
  qu->add_option("--event", qu_event, "Only this event id");
  qu->add_option("--coding", qu_modes.coding, "Expected store coding")
      ->check(CLI::IsMember({"soft", "hard"}))
      ->each([&](const std::string&) { qu_has_modes = true; });
  qu->add_option("--pooling", qu_modes.pooling, "Expected store pooling")
      ->check(CLI::IsMember({"max", "avg", "sum"}))
      ->each([&](const std::string&) { qu_has_modes = true; });
  qu->add_option("--norm", qu_modes.norm, "Expected store norm")
      ->check(CLI::IsMember({"none", "l1", "l2"}))
      ->each([&](const std::string&) { qu_has_modes = true; });
  qu->add_option("--workers", workers, "Worker threads (0 = auto)");

  auto* ev = app.add_subcommand("evaluate", "Compute per-event mAP and avg-mAP");
  std::string ev_manifest, ev_ranked, ev_method = "BoA", ev_out_dir;
  ev->add_option("--manifest", ev_manifest, "Dataset manifest")->required();
  ev->add_option("--ranked", ev_ranked, "Ranked-list dump from `query`")->required();
  ev->add_option("--method-name", ev_method, "Column label for the report");
  ev->add_option("--out-dir", ev_out_dir, "Also write report.csv and SVGs here");

  auto* tt = app.add_subcommand("ttest", "Paired t-test between two metric columns");
  std::string tt_a, tt_b;
  double alpha = 0.05;
  tt->add_option("--a", tt_a, "First metric column (event_id,value)")->required();
  tt->add_option("--b", tt_b, "Second metric column (event_id,value)")->required();
  tt->add_option("--alpha", alpha, "Significance level");

  auto* rp = app.add_subcommand("report", "Multi-method comparison report");
  std::vector<std::string> rp_methods, rp_avgs;
  std::string rp_out;
  double rp_alpha = 0.05;
  rp->add_option("--method", rp_methods, "NAME=FILE metric column (repeatable)");
  rp->add_option("--avg", rp_avgs, "NAME=VALUE published avg-mAP override");
  rp->add_option("--alpha", rp_alpha, "Significance level for intervals");
  rp->add_option("--out-dir", rp_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (workers == 0) workers = boa::default_workers();

  try {
    if (sp->parsed()) return cmd_sample_plan(duration, rate);
    if (sc->parsed())
      return cmd_score(adapter, dim, refs_path, video_id, score_out, score_format);
    if (sy->parsed()) return cmd_synth(synth_cfg, counts_path, synth_out);
    if (ix->parsed()) return cmd_index(ix_manifest, ix_scores, ix_modes, ix_out, workers);
    if (qu->parsed())
      return cmd_query(qu_store, qu_manifest, qu_out, qu_event,
                       qu_has_modes ? &qu_modes : nullptr, workers);
    if (ev->parsed()) return cmd_evaluate(ev_manifest, ev_ranked, ev_method, ev_out_dir);
    if (tt->parsed()) return cmd_ttest(tt_a, tt_b, alpha);
    if (rp->parsed()) return cmd_report(rp_methods, rp_avgs, rp_alpha, rp_out);
  } catch (const boa::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const boa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
