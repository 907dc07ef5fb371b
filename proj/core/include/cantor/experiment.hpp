#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cantor {

/// A named, seeded experiment drawn from the fixed catalog.  Every field that
/// affects sampling is part of the record, so reruns are reproducible.
struct ExperimentSpec {
  std::string name;
  std::uint64_t trials = 10000;
  int depth = 40;
  std::map<std::string, std::string> params;
  std::uint64_t master_seed = 0;
  double confidence = 0.99;
  int workers = 4;  // execution detail only; results are identical for any value
};

struct Statistic {
  double estimate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

/// Result of one experiment run.  `primary` is the (lower) statistic; for
/// bracketing experiments `upper` carries the matching upper statistic.
/// The verdict compares the bracket hull [primary.ci_lo, upper.ci_hi] (or the
/// primary CI alone) against the certified reference interval:
///   WithinCI  - the reference lies inside the hull,
///   Bracketed - the hull and the reference overlap,
///   OutsideCI - they are disjoint.
struct EstimateRecord {
  ExperimentSpec spec;
  std::uint64_t trials_done = 0;
  std::uint64_t failures = 0;
  Statistic primary;
  std::optional<Statistic> upper;
  std::optional<std::pair<double, double>> reference;
  std::string verdict;
};

/// Raised when more than 0.1% of trials fail to decide.
class ExperimentAborted : public std::runtime_error {
 public:
  explicit ExperimentAborted(const std::string& what) : std::runtime_error(what) {}
};

/// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_ci(std::uint64_t successes, std::uint64_t trials,
                                    double confidence);

/// Two-sided normal critical value: P(|Z| <= z) = confidence.
double normal_critical_value(double confidence);

/// Names of all catalog experiments.
const std::vector<std::string>& experiment_catalog();

/// Default depth for an experiment (what --depth means varies: search depth
/// for function experiments, tree depth for decoding experiments).
int default_depth(const std::string& name);

/// Runs a catalog experiment.  Deterministic given the spec: trial i draws
/// from stream_id i (auxiliary roles use stream_id role*2^40 + i), and all
/// aggregation is exact-integer, so any worker count gives identical output.
EstimateRecord run_experiment(const ExperimentSpec& spec);

/// Exact extinction recursion for the 4-ary tree coding: probability that
/// the decoded tree has no member at the given depth, as an exact rational.
mpq_class gw_extinction_probability(int depth);

/// Exact digit law of the induced 4-ary coding: (2/9, 2/9, 4/9, 1/9).
mpq_class gw_digit_probability(int digit);

// ---- exact and statistical verification routines (CLI `verify`) ----------

struct CheckResult {
  bool pass = false;
  std::string summary;
};

/// Exhaustive path-selector pushforward at small depth: every output prefix
/// must occur with probability exactly 2^-depth under uniform digits/bits.
CheckResult check_path_pushforward(int depth);

/// The 9 child-label pairs map to 4-ary digits with law (2/9, 2/9, 4/9, 1/9).
CheckResult check_zeros_digit_law();

/// All 3^6 depth-2 labelings: the zeros-tree distribution equals the 4-ary
/// tree law exactly.
CheckResult check_zeros_tree_law();

/// Sampled digit law of the induced 4-ary coding vs its exact probabilities.
CheckResult check_zeros_sampled(std::uint64_t seeds, int depth, std::uint64_t master_seed,
                                double confidence);

/// Support equality: the support tree of a coded measure equals the decoded
/// closed set exactly, with no Undetermined nodes.
CheckResult check_support_equality(std::uint64_t seeds, int depth,
                                   std::uint64_t master_seed);

/// 1/3-support digit frequencies vs (1/3, 1/3, 1/3), with Undetermined
/// accounting.
struct ThirdPushforwardResult {
  bool pass = false;
  std::string summary;
  std::uint64_t digits = 0;
  std::uint64_t undetermined = 0;
  std::uint64_t counts[3] = {0, 0, 0};
};
ThirdPushforwardResult check_third_pushforward(std::uint64_t seeds, int depth,
                                               unsigned max_bits, std::uint64_t master_seed,
                                               double confidence);

}  // namespace cantor
