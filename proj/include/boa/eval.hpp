#pragma once

#include <string>
#include <vector>

#include "boa/ingest.hpp"
#include "boa/retrieval.hpp"
#include "boa/types.hpp"

namespace boa {

// Non-interpolated average precision. `flags` is the ranked list reduced to
// relevance booleans, `total_relevant` is the number of positives in the
// database (R), which may exceed the number of flags set.
double average_precision(const std::vector<bool>& flags, int total_relevant);

// mAP of one event: unweighted mean of per-query APs. Positive ids are the
// event's Db+ set; every ranked list must cover the event's database.
double map_for_event(const EventSpec& event, const std::vector<RankedList>& lists);

double avg_map(const std::vector<double>& per_event_map);

struct EventEval {
  std::string event_id;
  std::vector<double> per_query_ap;  // query order of the manifest
  double map = 0;
};

struct EvalReport {
  std::vector<EventEval> events;
  double avg_map = 0;
};

// Evaluates ranked lists (e.g. parsed from a dump) against the manifest.
// Lists are matched to events by query id.
EvalReport evaluate(const DatasetManifest& manifest,
                    const std::vector<RankedList>& lists);

// Inverse CDF of Student's t distribution, via the regularized incomplete
// beta function and bisection. Absolute error below 1e-8.
double t_quantile(double p, int df);

double regularized_incomplete_beta(double a, double b, double x);

struct ConfidenceInterval {
  double lower = 0;
  double upper = 0;
  double alpha = 0.05;
  double t_statistic = 0;
  int df = 0;
  double mean_diff = 0;

  bool includes_zero() const { return lower <= 0 && 0 <= upper; }
};

// Paired t confidence interval for mean(xs - ys). Zero sample variance
// collapses the interval to [mean, mean].
ConfidenceInterval paired_ttest(const std::vector<double>& xs,
                                const std::vector<double>& ys, double alpha = 0.05);

}  // namespace boa
