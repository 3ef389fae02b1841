#include "boa/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace boa {

double average_precision(const std::vector<bool>& flags, int total_relevant) {
  if (total_relevant < 1)
    throw InvalidInputError("average_precision: no relevant items (R=0)");
  int hits = 0;
  double sum = 0;
  for (std::size_t k = 0; k < flags.size(); ++k) {
    if (flags[k]) {
      ++hits;
      sum += double(hits) / double(k + 1);
    }
  }
  if (hits > total_relevant)
    throw InvalidInputError("average_precision: more hits than relevant items");
  return sum / double(total_relevant);
}

double map_for_event(const EventSpec& event, const std::vector<RankedList>& lists) {
  if (lists.size() != event.queries.size())
    throw InvalidInputError("event \"" + event.event_id + "\": expected " +
                            std::to_string(event.queries.size()) +
                            " ranked lists, got " + std::to_string(lists.size()));
  auto pos = event.positive_ids();
  std::set<std::string> positives(pos.begin(), pos.end());
  double sum = 0;
  for (const auto& list : lists) {
    std::vector<bool> flags;
    flags.reserve(list.entries.size());
    for (const auto& e : list.entries) flags.push_back(positives.count(e.video_id) > 0);
    sum += average_precision(flags, int(positives.size()));
  }
  return sum / double(lists.size());
}

double avg_map(const std::vector<double>& per_event_map) {
  if (per_event_map.empty()) throw InvalidInputError("avg_map: no events");
  double sum = 0;
  for (double m : per_event_map) sum += m;
  return sum / double(per_event_map.size());
}

EvalReport evaluate(const DatasetManifest& manifest,
                    const std::vector<RankedList>& lists) {
  std::map<std::string, const RankedList*> by_query;
  for (const auto& l : lists) by_query[l.query_id] = &l;

  EvalReport report;
  std::vector<double> maps;
  for (const auto& event : manifest.events) {
    EventEval ev;
    ev.event_id = event.event_id;
    std::vector<RankedList> event_lists;
    for (const auto& q : event.queries) {
      auto it = by_query.find(q);
      if (it == by_query.end())
        throw InvalidInputError("missing ranked list for query \"" + q + "\" of event \"" +
                                event.event_id + "\"");
      event_lists.push_back(*it->second);
    }
    auto pos = event.positive_ids();
    std::set<std::string> positives(pos.begin(), pos.end());
    for (const auto& list : event_lists) {
      std::vector<bool> flags;
      for (const auto& e : list.entries) flags.push_back(positives.count(e.video_id) > 0);
      ev.per_query_ap.push_back(average_precision(flags, int(positives.size())));
    }
    ev.map = map_for_event(event, event_lists);
    maps.push_back(ev.map);
    report.events.push_back(std::move(ev));
  }
  report.avg_map = avg_map(maps);
  return report;
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (x < 0 || x > 1)
    throw InvalidInputError("regularized_incomplete_beta: x out of [0,1]");
  if (x == 0) return 0;
  if (x == 1) return 1;
  // Continued fraction (modified Lentz), plus the symmetry transform that
  // keeps it in its fast-converging region.
  auto betacf = [](double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kTiny = 1e-300;
    double qab = a + b, qap = a + 1, qam = a - 1;
    double c = 1;
    double d = 1 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
      int m2 = 2 * m;
      double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
      d = 1 + aa * d;
      if (std::fabs(d) < kTiny) d = kTiny;
      c = 1 + aa / c;
      if (std::fabs(c) < kTiny) c = kTiny;
      d = 1 / d;
      h *= d * c;
      aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
      d = 1 + aa * d;
      if (std::fabs(d) < kTiny) d = kTiny;
      c = 1 + aa / c;
      if (std::fabs(c) < kTiny) c = kTiny;
      d = 1 / d;
      double del = d * c;
      h *= del;
      if (std::fabs(del - 1) < kEps) break;
    }
    return h;
  };
  double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                    a * std::log(x) + b * std::log1p(-x);
  double front = std::exp(ln_front);
  if (x < (a + 1) / (a + b + 2)) return front * betacf(a, b, x) / a;
  return 1 - front * betacf(b, a, 1 - x) / b;
}

namespace {

// CDF of Student's t with df degrees of freedom.
double t_cdf(double t, int df) {
  double x = double(df) / (double(df) + t * t);
  double tail = 0.5 * regularized_incomplete_beta(double(df) / 2.0, 0.5, x);
  return t >= 0 ? 1 - tail : tail;
}

}  // namespace

double t_quantile(double p, int df) {
  if (!(p > 0 && p < 1)) throw InvalidInputError("t_quantile: p must be in (0,1)");
  if (df < 1) throw InvalidInputError("t_quantile: df must be >= 1");
  if (p == 0.5) return 0;
  if (p < 0.5) return -t_quantile(1 - p, df);
  double lo = 0, hi = 1;
  while (t_cdf(hi, df) < p) {
    hi *= 2;
    if (hi > 1e18) throw InvalidInputError("t_quantile: p too close to 1");
  }
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (t_cdf(mid, df) < p)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-13 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

ConfidenceInterval paired_ttest(const std::vector<double>& xs,
                                const std::vector<double>& ys, double alpha) {
  if (xs.size() != ys.size())
    throw InvalidInputError("paired_ttest: sample lengths differ");
  std::size_t n = xs.size();
  if (n < 2) throw InvalidInputError("paired_ttest: need at least 2 paired samples");
  if (!(alpha > 0 && alpha < 1))
    throw InvalidInputError("paired_ttest: alpha must be in (0,1)");

  double mean = 0;
  for (std::size_t i = 0; i < n; ++i) mean += xs[i] - ys[i];
  mean /= double(n);
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = xs[i] - ys[i] - mean;
    ss += d * d;
  }
  double s = std::sqrt(ss / double(n - 1));
  double se = s / std::sqrt(double(n));

  ConfidenceInterval ci;
  ci.alpha = alpha;
  ci.df = int(n) - 1;
  ci.mean_diff = mean;
  if (se == 0) {
    // Degenerate variance: the interval collapses onto the mean difference.
    ci.lower = ci.upper = mean;
    ci.t_statistic =
        mean == 0 ? 0
                  : std::copysign(std::numeric_limits<double>::infinity(), mean);
    return ci;
  }
  ci.t_statistic = mean / se;
  double margin = t_quantile(1 - alpha / 2, ci.df) * se;
  ci.lower = mean - margin;
  ci.upper = mean + margin;
  return ci;
}

}  // namespace boa
