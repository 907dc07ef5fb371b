#include "cantor/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cantor/errors.hpp"
#include "cantor/function.hpp"
#include "cantor/measure.hpp"
#include "cantor/qn.hpp"
#include "cantor/stream.hpp"
#include "cantor/tree.hpp"

namespace cantor {

namespace {

constexpr std::uint64_t kMaxTrials = std::uint64_t{1} << 40;
constexpr std::uint64_t kRoleStride = std::uint64_t{1} << 40;

DigitStream trial_stream(const ExperimentSpec& spec, std::uint64_t trial, int role,
                         int alphabet) {
  return DigitStream(spec.master_seed, static_cast<std::uint64_t>(role) * kRoleStride + trial,
                     alphabet);
}

// ---- statistics ------------------------------------------------------------

double normal_quantile(double prob) {
  // Acklam's rational approximation to the inverse normal CDF, refined with
  // one Halley step; deterministic and accurate to ~1e-15.
  if (prob <= 0.0 || prob >= 1.0) throw std::invalid_argument("quantile outside (0,1)");
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1 - plow;
  double x;
  if (prob < plow) {
    const double q = std::sqrt(-2 * std::log(prob));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (prob <= phigh) {
    const double q = prob - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    const double q = std::sqrt(-2 * std::log(1 - prob));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  // Halley refinement against erfc.
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - prob;
  const double u = e * std::sqrt(2 * M_PI) * std::exp(x * x / 2);
  return x - u / (1 + x * u / 2);
}

}  // namespace

double normal_critical_value(double confidence) {
  if (confidence <= 0.0 || confidence >= 1.0) {
    throw std::invalid_argument("confidence must be in (0,1)");
  }
  return normal_quantile(0.5 + confidence / 2.0);
}

std::pair<double, double> wilson_ci(std::uint64_t successes, std::uint64_t trials,
                                    double confidence) {
  if (trials == 0) throw std::invalid_argument("wilson_ci needs at least one trial");
  if (successes > trials) throw std::invalid_argument("more successes than trials");
  const double z = normal_critical_value(confidence);
  const double n = static_cast<double>(trials);
  const double s = static_cast<double>(successes);
  const double z2 = z * z;
  const double denom = n + z2;
  const double center = (s + z2 / 2) / denom;
  const double half = z * std::sqrt(s * (n - s) / n + z2 / 4) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

// ---- exact-sum accumulation -------------------------------------------------

// Per-trial contributions are exact integers, so totals are independent of
// the worker partition.
struct TrialResult {
  std::uint64_t lower = 0;
  std::uint64_t upper = 0;
  std::uint64_t count = 0;  // Ratio statistics: denominator units
  bool failed = false;
};

struct Sums {
  std::uint64_t failures = 0;
  mpz_class lower_sum = 0, lower_sq = 0;
  mpz_class upper_sum = 0, upper_sq = 0;
  mpz_class count_sum = 0;

  void absorb(const TrialResult& r) {
    if (r.failed) {
      ++failures;
      return;
    }
    const mpz_class lo(static_cast<unsigned long>(r.lower));
    const mpz_class up(static_cast<unsigned long>(r.upper));
    lower_sum += lo;
    lower_sq += lo * lo;
    upper_sum += up;
    upper_sq += up * up;
    count_sum += static_cast<unsigned long>(r.count);
  }
  void merge(const Sums& other) {
    failures += other.failures;
    lower_sum += other.lower_sum;
    lower_sq += other.lower_sq;
    upper_sum += other.upper_sum;
    upper_sq += other.upper_sq;
    count_sum += other.count_sum;
  }
};

enum class StatKind { Bernoulli, MeanUnits, Ratio };

struct Prepared {
  StatKind kind = StatKind::Bernoulli;
  int scale_log2 = 0;  // MeanUnits: per-trial value = units / 2^scale
  bool bracketed = false;
  std::function<TrialResult(std::uint64_t)> trial;
  std::optional<std::pair<double, double>> reference;
};

using Preparer = std::function<Prepared(const ExperimentSpec&)>;

// ---- parameter helpers -------------------------------------------------------

std::string param_or(const ExperimentSpec& spec, const std::string& key,
                     const std::string& fallback) {
  const auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

int int_param(const ExperimentSpec& spec, const std::string& key, int fallback) {
  const std::string v = param_or(spec, key, std::to_string(fallback));
  std::size_t pos = 0;
  const int out = std::stoi(v, &pos);
  if (pos != v.size()) throw std::invalid_argument("bad integer parameter " + key);
  return out;
}

CodeWord binary_target(const ExperimentSpec& spec, const std::string& fallback) {
  return CodeWord::parse(2, param_or(spec, "target", fallback));
}

std::pair<double, double> interval_to_doubles(const DyadicInterval& iv) {
  return {iv.lo().to_double(), iv.hi().to_double()};
}

constexpr unsigned kReferencePrecision = 192;

// ---- experiment registry -----------------------------------------------------

Prepared prepare_coin(const ExperimentSpec& spec) {
  Prepared p;
  p.kind = StatKind::Bernoulli;
  p.reference = {{0.5, 0.5}};
  p.trial = [spec](std::uint64_t i) {
    TrialResult r;
    r.lower = static_cast<std::uint64_t>(trial_stream(spec, i, 0, 2).digit_at(0));
    return r;
  };
  return p;
}

Prepared prepare_hit_prob(const ExperimentSpec& spec) {
  Prepared p;
  p.kind = StatKind::Bernoulli;
  p.bracketed = true;
  const CodeWord target = binary_target(spec, "0");
  if (target.empty()) throw std::invalid_argument("hit_prob needs a non-empty target");
  const QnTable t = q_table(static_cast<int>(target.size()), kReferencePrecision);
  p.reference = interval_to_doubles(t.q_at(static_cast<int>(target.size())));
  const int depth = spec.depth;
  p.trial = [spec, target, depth](std::uint64_t i) {
    const StreamFunction f(trial_stream(spec, i, 0, 3), depth);
    TrialResult r;
    r.lower = hit_witnessed(f, target, depth) ? 1 : 0;
    r.upper = r.lower != 0 || hit_possible(f, target, depth) ? 1 : 0;
    return r;
  };
  return p;
}

Prepared prepare_hit_prob_fixed_y(const ExperimentSpec& spec) {
  Prepared p;
  p.kind = StatKind::Bernoulli;
  p.bracketed = true;
  const int level = int_param(spec, "level", 10);
  if (level < 1 || level > 30) throw std::invalid_argument("level out of range");
  CodeWord target(2);
  for (int j = 0; j < level; ++j) target.push_back(0);
  const QnTable t = q_table(level, kReferencePrecision);
  p.reference = {{0.75, t.q_at(level).hi().to_double()}};
  const int depth = spec.depth;
  p.trial = [spec, target, depth](std::uint64_t i) {
    const StreamFunction f(trial_stream(spec, i, 0, 3), depth);
    TrialResult r;
    r.lower = hit_witnessed(f, target, depth) ? 1 : 0;
    r.upper = r.lower != 0 || hit_possible(f, target, depth) ? 1 : 0;
    return r;
  };
  return p;
}

Prepared prepare_cover_mean(const ExperimentSpec& spec) {
  Prepared p;
  const int level = int_param(spec, "level", 4);
  if (level < 1 || level > 10) throw std::invalid_argument("level out of range");
  p.kind = StatKind::MeanUnits;
  p.scale_log2 = level;
  p.bracketed = true;
  const QnTable t = q_table(level, kReferencePrecision);
  p.reference = interval_to_doubles(t.q_at(level));
  const int depth = spec.depth;
  p.trial = [spec, level, depth](std::uint64_t i) {
    const StreamFunction f(trial_stream(spec, i, 0, 3), depth);
    TrialResult r;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << level); ++v) {
      const CodeWord target = to_codeword(BinaryWord{v, level});
      const bool witnessed = hit_witnessed(f, target, depth);
      if (witnessed) ++r.lower;
      if (witnessed || hit_possible(f, target, depth)) ++r.upper;
    }
    return r;
  };
  return p;
}

Prepared prepare_range_positive(const ExperimentSpec& spec) {
  Prepared p;
  p.kind = StatKind::Bernoulli;
  const int depth = spec.depth;
  p.trial = [spec, depth](std::uint64_t i) {
    const StreamFunction f(trial_stream(spec, i, 0, 3), depth);
    TrialResult r;
    for (std::uint64_t v = 0; v < 16; ++v) {
      if (hit_witnessed(f, to_codeword(BinaryWord{v, 4}), depth)) {
        r.lower = 1;
        break;
      }
    }
    return r;
  };
  return p;
}

Prepared prepare_empty_cylinder(const ExperimentSpec& spec) {
  Prepared p;
  p.kind = StatKind::Bernoulli;
  const int level = int_param(spec, "level", 8);
  if (level < 1 || level > 12) throw std::invalid_argument("level out of range");
  p.reference = {{0.99, 1.0}};
  const int depth = spec.depth;
  p.trial = [spec, level, depth](std::uint64_t i) {
    const StreamFunction f(trial_stream(spec, i, 0, 3), depth);
    TrialResult r;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << level); ++v) {
      if (!hit_possible(f, to_codeword(BinaryWord{v, level}), depth)) {
        r.lower = 1;  // some cylinder is certified missed
        break;
      }
    }
    return r;
  };
  return p;
}

Prepared prepare_onto_level(const ExperimentSpec& spec) {
  Prepared p;
  p.kind = StatKind::Bernoulli;
  const int level = int_param(spec, "level", 2);
  if (level < 1 || level > 8) throw std::invalid_argument("level out of range");
  const QnTable t = q_table(std::max(level, 2), kReferencePrecision);
  p.reference = {{0.0, u_measure(level, t).hi().to_double()}};
  const int depth = spec.depth;
  p.trial = [spec, level, depth](std::uint64_t i) {
    const StreamFunction f(trial_stream(spec, i, 0, 3), depth);
    TrialResult r;
    r.lower = onto_up_to_level(f, level, depth) ? 1 : 0;
    return r;
  };
  return p;
}

Prepared prepare_zeros_pushforward(const ExperimentSpec& spec) {
  Prepared p;
  p.kind = StatKind::Ratio;
  const int digit = int_param(spec, "digit", 2);
  if (digit < 0 || digit > 3) throw std::invalid_argument("digit out of range");
  if (spec.depth < 1 || spec.depth > 10) {
    throw std::invalid_argument("zeros_pushforward depth must be in [1,10]");
  }
  const double exact = gw_digit_probability(digit).get_d();
  p.reference = {{exact, exact}};
  const int depth = spec.depth;
  p.trial = [spec, digit, depth](std::uint64_t i) {
    const StreamFunction f(trial_stream(spec, i, 0, 3), depth);
    const CodeWord code = induced_gw_code(f, depth);
    TrialResult r;
    r.count = code.size();
    for (std::uint8_t d : code) {
      if (d == digit) ++r.lower;
    }
    return r;
  };
  return p;
}

Prepared prepare_support_equality(const ExperimentSpec& spec) {
  Prepared p;
  p.kind = StatKind::Bernoulli;
  p.reference = {{1.0, 1.0}};
  const int depth = std::min(spec.depth, 16);
  p.trial = [spec, depth](std::uint64_t i) {
    const DigitStream source = trial_stream(spec, i, 0, 3);
    const DecodeReceipt receipt = decode_tree3(source, depth);
    CodeWord x(3);
    for (std::uint64_t j = 0; j < receipt.digits_consumed; ++j) {
      x.push_back(source.digit_at(j));
    }
    const MeasureCode m = support_measure_code(x);
    const SupportTree st = support_tree(m, depth, 2);
    TrialResult r;
    bool equal = st.count(NodeStatus::Undetermined) == 0;
    for (int d = 0; d <= depth && equal; ++d) {
      equal = st.in_level(d) == receipt.tree.level(d);
    }
    r.lower = equal ? 1 : 0;
    return r;
  };
  return p;
}

Prepared prepare_third_pushforward(const ExperimentSpec& spec) {
  Prepared p;
  p.kind = StatKind::Ratio;
  const int digit = int_param(spec, "digit", 2);
  if (digit < 0 || digit > 2) throw std::invalid_argument("digit out of range");
  const unsigned max_bits = static_cast<unsigned>(int_param(spec, "max_bits", 32));
  if (spec.depth < 1 || spec.depth > 10) {
    throw std::invalid_argument("third_pushforward depth must be in [1,10]");
  }
  p.reference = {{1.0 / 3.0, 1.0 / 3.0}};
  const int depth = spec.depth;
  p.trial = [spec, digit, max_bits, depth](std::uint64_t i) {
    const MeasureCode m = MeasureCode::uniform_random(trial_stream(spec, i, 0, 2));
    TrialResult r;
    const CodeWord code = third_support_digits(m, depth, max_bits);
    r.count = code.size();
    for (std::uint8_t d : code) {
      if (d == digit) ++r.lower;
    }
    return r;
  };
  return p;
}

Prepared prepare_barycenter(const ExperimentSpec& spec) {
  Prepared p;
  const CodeWord target = binary_target(spec, "0");
  p.kind = StatKind::MeanUnits;
  p.scale_log2 = spec.depth;
  p.bracketed = true;
  const double exact = barycenter_value(static_cast<int>(target.size())).get_d();
  p.reference = {{exact, exact}};
  const int depth = spec.depth;
  p.trial = [spec, target, depth](std::uint64_t i) {
    const StreamFunction f(trial_stream(spec, i, 0, 3), depth);
    const PreimageWeight w = preimage_weight(f, target, depth);
    return TrialResult{w.decided_units, w.consistent_units, 0, false};
  };
  return p;
}

Prepared prepare_gw_extinction(const ExperimentSpec& spec) {
  Prepared p;
  p.kind = StatKind::Bernoulli;
  const int depth = std::min(spec.depth, 24);
  const mpq_class survival = 1 - gw_extinction_probability(depth);
  const double s = survival.get_d();
  p.reference = {{s, s}};
  p.trial = [spec, depth](std::uint64_t i) {
    const DecodeReceipt receipt = decode_tree4(trial_stream(spec, i, 0, 4), depth);
    TrialResult r;
    r.lower = receipt.tree.count_at(depth) > 0 ? 1 : 0;
    return r;
  };
  return p;
}

Prepared prepare_gw_nodes(const ExperimentSpec& spec) {
  Prepared p;
  p.kind = StatKind::MeanUnits;
  p.scale_log2 = 0;
  const int depth = std::min(spec.depth, 20);
  mpq_class mean = 1;
  for (int d = 0; d < depth; ++d) mean *= mpq_class(4, 3);
  const double m = mean.get_d();
  p.reference = {{m, m}};
  p.trial = [spec, depth](std::uint64_t i) {
    const DecodeReceipt receipt = decode_tree4(trial_stream(spec, i, 0, 4), depth);
    return TrialResult{receipt.tree.count_at(depth), receipt.tree.count_at(depth), 0, false};
  };
  return p;
}

Prepared prepare_tree_cover(const ExperimentSpec& spec) {
  Prepared p;
  const int depth = std::min(spec.depth, 20);
  p.kind = StatKind::MeanUnits;
  p.scale_log2 = depth;
  mpq_class mean = 1;
  for (int d = 0; d < depth; ++d) mean *= mpq_class(2, 3);
  const double m = mean.get_d();
  p.reference = {{m, m}};
  p.trial = [spec, depth](std::uint64_t i) {
    const DecodeReceipt receipt = decode_tree3(trial_stream(spec, i, 0, 3), depth);
    return TrialResult{receipt.tree.count_at(depth), receipt.tree.count_at(depth), 0, false};
  };
  return p;
}

Prepared prepare_composition_demo(const ExperimentSpec& spec) {
  Prepared p;
  p.kind = StatKind::Bernoulli;
  p.reference = {{1.0, 1.0}};
  const int depth = spec.depth;
  constexpr int kInner = 12;
  if (depth < 2 * kInner) throw std::invalid_argument("composition_demo needs depth >= 24");
  p.trial = [spec, depth](std::uint64_t i) {
    TrialResult r;
    const StreamFunction f(trial_stream(spec, i, 0, 3), depth);
    const EvalResult image = eval(f, BinaryWord{0, depth}, kInner);
    if (!image.decided) {
      r.failed = true;  // the fixed input did not yield enough output bits
      return r;
    }
    const BinaryWord y = to_binary_word(image.output);
    const CodeWord tree_code = tree_code_containing(y, trial_stream(spec, i, 1, 3), kInner);
    const FiniteTree tree = decode_tree3(tree_code, kInner).tree;
    const FunctionCode g = sample_function_with_zeros(tree, trial_stream(spec, i, 2, 3), kInner);
    const EvalResult out = eval(g, y, kInner);
    bool zeros = true;
    for (std::uint8_t bit : out.output) zeros = zeros && bit == 0;
    r.lower = zeros ? 1 : 0;
    return r;
  };
  return p;
}

const std::map<std::string, Preparer>& registry() {
  static const std::map<std::string, Preparer> reg = {
      {"coin", prepare_coin},
      {"hit_prob", prepare_hit_prob},
      {"hit_prob_fixed_y", prepare_hit_prob_fixed_y},
      {"cover_mean", prepare_cover_mean},
      {"range_positive", prepare_range_positive},
      {"empty_cylinder", prepare_empty_cylinder},
      {"onto_level", prepare_onto_level},
      {"zeros_pushforward", prepare_zeros_pushforward},
      {"support_equality", prepare_support_equality},
      {"third_pushforward", prepare_third_pushforward},
      {"barycenter", prepare_barycenter},
      {"gw_extinction", prepare_gw_extinction},
      {"gw_nodes", prepare_gw_nodes},
      {"tree_cover", prepare_tree_cover},
      {"composition_demo", prepare_composition_demo},
  };
  return reg;
}

Statistic bernoulli_statistic(const mpz_class& successes, std::uint64_t trials,
                              double confidence) {
  const std::uint64_t s = successes.get_ui();
  Statistic st;
  st.estimate = static_cast<double>(s) / static_cast<double>(trials);
  const auto ci = wilson_ci(s, trials, confidence);
  st.ci_lo = ci.first;
  st.ci_hi = ci.second;
  return st;
}

Statistic mean_statistic(const mpz_class& sum, const mpz_class& sq, std::uint64_t trials,
                         int scale_log2, double confidence) {
  Statistic st;
  const mpz_class scale = mpz_class(1) << static_cast<unsigned long>(scale_log2);
  mpq_class mean_q(sum, scale * static_cast<unsigned long>(trials));
  mean_q.canonicalize();
  st.estimate = mean_q.get_d();
  double variance = 0.0;
  if (trials > 1) {
    // Var = (sum sq - sum^2 / n) / (n - 1), still in exact units^2.
    mpq_class mean_sq(sum * sum, mpz_class(static_cast<unsigned long>(trials)));
    mean_sq.canonicalize();
    const mpq_class num = mpq_class(sq) - mean_sq;
    const mpq_class var_units = num / static_cast<unsigned long>(trials - 1);
    const mpq_class var_q = var_units / mpq_class(scale * scale);
    variance = std::max(0.0, var_q.get_d());
  }
  const double z = normal_critical_value(confidence);
  const double half = z * std::sqrt(variance / static_cast<double>(trials));
  st.ci_lo = st.estimate - half;
  st.ci_hi = st.estimate + half;
  return st;
}

std::string classify_verdict(double hull_lo, double hull_hi,
                             const std::pair<double, double>& ref) {
  if (ref.second < hull_lo || ref.first > hull_hi) return "OutsideCI";
  if (ref.first >= hull_lo && ref.second <= hull_hi) return "WithinCI";
  return "Bracketed";
}

}  // namespace

const std::vector<std::string>& experiment_catalog() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

int default_depth(const std::string& name) {
  if (name == "zeros_pushforward") return 8;
  if (name == "third_pushforward") return 6;
  if (name == "support_equality") return 12;
  if (name == "gw_extinction") return 12;
  if (name == "gw_nodes" || name == "tree_cover") return 8;
  return 40;
}

EstimateRecord run_experiment(const ExperimentSpec& spec) {
  const auto it = registry().find(spec.name);
  if (it == registry().end()) {
    throw std::invalid_argument("unknown experiment: " + spec.name);
  }
  if (spec.trials == 0 || spec.trials >= kMaxTrials) {
    throw std::invalid_argument("trials out of range");
  }
  if (spec.confidence <= 0.0 || spec.confidence >= 1.0) {
    throw std::invalid_argument("confidence must be in (0,1)");
  }
  const Prepared prepared = it->second(spec);

  const int workers = std::max(1, spec.workers);
  std::vector<Sums> partial(static_cast<std::size_t>(workers));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  const std::uint64_t chunk = (spec.trials + workers - 1) / workers;

  auto worker = [&](int w) {
    const std::uint64_t begin = chunk * static_cast<std::uint64_t>(w);
    const std::uint64_t end = std::min(spec.trials, begin + chunk);
    Sums& sums = partial[static_cast<std::size_t>(w)];
    try {
      for (std::uint64_t i = begin; i < end; ++i) {
        TrialResult r;
        try {
          r = prepared.trial(i);
        } catch (const NeedMoreCode&) {
          r.failed = true;
        } catch (const NeedMoreBits&) {
          r.failed = true;
        } catch (const UndeterminedNode&) {
          r.failed = true;
        } catch (const DeadEnd&) {
          r.failed = true;
        }
        sums.absorb(r);
      }
    } catch (...) {
      errors[static_cast<std::size_t>(w)] = std::current_exception();
    }
  };

  if (workers == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  Sums sums;
  for (const Sums& part : partial) sums.merge(part);

  if (sums.failures * 1000 > spec.trials) {
    throw ExperimentAborted("experiment " + spec.name + " aborted: " +
                            std::to_string(sums.failures) + " failures out of " +
                            std::to_string(spec.trials) + " trials");
  }
  const std::uint64_t decided = spec.trials - sums.failures;
  if (decided == 0) throw ExperimentAborted("experiment decided no trials");

  EstimateRecord rec;
  rec.spec = spec;
  rec.trials_done = decided;
  rec.failures = sums.failures;
  switch (prepared.kind) {
    case StatKind::Bernoulli:
      rec.primary = bernoulli_statistic(sums.lower_sum, decided, spec.confidence);
      if (prepared.bracketed) {
        rec.upper = bernoulli_statistic(sums.upper_sum, decided, spec.confidence);
      }
      break;
    case StatKind::MeanUnits:
      rec.primary = mean_statistic(sums.lower_sum, sums.lower_sq, decided,
                                   prepared.scale_log2, spec.confidence);
      if (prepared.bracketed) {
        rec.upper = mean_statistic(sums.upper_sum, sums.upper_sq, decided,
                                   prepared.scale_log2, spec.confidence);
      }
      break;
    case StatKind::Ratio: {
      const std::uint64_t total = sums.count_sum.get_ui();
      if (total == 0) throw ExperimentAborted("ratio experiment produced no digits");
      rec.primary = bernoulli_statistic(sums.lower_sum, total, spec.confidence);
      break;
    }
  }
  rec.reference = prepared.reference;
  if (rec.reference) {
    const double hull_lo = rec.primary.ci_lo;
    const double hull_hi = rec.upper ? rec.upper->ci_hi : rec.primary.ci_hi;
    rec.verdict = classify_verdict(hull_lo, hull_hi, *rec.reference);
  }
  return rec;
}

mpq_class gw_extinction_probability(int depth) {
  if (depth < 0) throw std::invalid_argument("negative depth");
  // Offspring pgf under digit law (2/9, 2/9, 4/9, 1/9):
  // h(s) = 1/9 + (4/9) s + (4/9) s^2 = ((1 + 2s)/3)^2.
  mpq_class e(0);
  for (int d = 0; d < depth; ++d) {
    mpq_class base = (1 + 2 * e) / 3;
    e = base * base;
  }
  return e;
}

mpq_class gw_digit_probability(int digit) {
  switch (digit) {
    case 0:
    case 1:
      return mpq_class(2, 9);
    case 2:
      return mpq_class(4, 9);
    case 3:
      return mpq_class(1, 9);
    default:
      throw std::invalid_argument("digit out of range");
  }
}

// ---- exact verification routines ---------------------------------------------

CheckResult check_path_pushforward(int depth) {
  if (depth < 1 || depth > 3) {
    throw std::invalid_argument("exhaustive path pushforward supports depth 1..3");
  }
  const std::uint64_t digit_count = (std::uint64_t{1} << depth) - 1;  // full tree consumption
  std::uint64_t code_count = 1;
  for (std::uint64_t i = 0; i < digit_count; ++i) code_count *= 3;
  const std::uint64_t selector_count = std::uint64_t{1} << depth;

  std::vector<std::uint64_t> counts(selector_count, 0);
  std::vector<std::uint8_t> digits(digit_count, 0);
  for (std::uint64_t c = 0; c < code_count; ++c) {
    std::uint64_t rem = c;
    for (std::uint64_t i = 0; i < digit_count; ++i) {
      digits[i] = static_cast<std::uint8_t>(rem % 3);
      rem /= 3;
    }
    const DecodeReceipt receipt = decode_tree3(CodeWord(3, digits), depth);
    for (std::uint64_t b = 0; b < selector_count; ++b) {
      const CodeWord bits = to_codeword(BinaryWord{b, depth});
      const CodeWord out = select_path(receipt.tree, bits, depth);
      counts[to_binary_word(out).bits]++;
    }
  }
  bool pass = true;
  for (std::uint64_t n : counts) pass = pass && n == code_count;
  std::ostringstream os;
  if (pass) {
    os << "exact: uniform 1/" << selector_count << " x " << selector_count << " ("
       << code_count << " occurrences each over " << code_count * selector_count
       << " combinations)";
  } else {
    os << "FAILED: output distribution not uniform";
  }
  return {pass, os.str()};
}

CheckResult check_zeros_digit_law() {
  std::uint64_t counts[4] = {0, 0, 0, 0};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) counts[gw_digit_from_labels(a, b)]++;
  }
  const bool pass = counts[0] == 2 && counts[1] == 2 && counts[2] == 4 && counts[3] == 1;
  std::ostringstream os;
  if (pass) {
    os << "exact: digit law (2/9, 2/9, 4/9, 1/9) from the 9 child-label pairs";
  } else {
    os << "FAILED: digit counts " << counts[0] << "," << counts[1] << "," << counts[2]
       << "," << counts[3] << " of 9";
  }
  return {pass, os.str()};
}

CheckResult check_zeros_tree_law() {
  // All 3^6 labelings of the six non-root nodes of length <= 2.
  std::map<std::vector<std::uint64_t>, std::uint64_t> counts;
  std::vector<std::uint8_t> digits(6, 0);
  for (std::uint64_t c = 0; c < 729; ++c) {
    std::uint64_t rem = c;
    for (int i = 0; i < 6; ++i) {
      digits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(rem % 3);
      rem /= 3;
    }
    const FunctionCode f(CodeWord(3, digits), 2);
    const FiniteTree t = zeros_tree(f, 2);
    std::vector<std::uint64_t> key;
    for (int d = 0; d <= 2; ++d) {
      key.push_back(t.count_at(d));
      for (std::uint64_t v : t.level(d)) key.push_back(v + 16);
    }
    counts[key]++;
  }
  // Compare each observed frequency with the 4-ary tree law: the product of
  // digit probabilities over member nodes of length < 2.
  bool pass = true;
  mpq_class total(0);
  for (const auto& [key, count] : counts) {
    // Rebuild the tree from the key to weigh it.
    FiniteTree t(2);
    std::size_t pos = 0;
    for (int d = 0; d <= 2; ++d) {
      const std::uint64_t n = key[pos++];
      for (std::uint64_t j = 0; j < n; ++j) {
        const std::uint64_t v = key[pos++] - 16;
        if (d > 0) t.add(BinaryWord{v, d});
      }
    }
    mpq_class prob(1);
    for (int d = 0; d < 2; ++d) {
      for (std::uint64_t v : t.level(d)) {
        const BinaryWord node{v, d};
        const bool left = t.contains(node.child(0));
        const bool right = t.contains(node.child(1));
        prob *= gw_digit_probability(left && right ? 2 : (left ? 0 : (right ? 1 : 3)));
      }
    }
    mpq_class observed(count, 729);
    observed.canonicalize();
    pass = pass && observed == prob;
    total += prob;
  }
  pass = pass && total == 1 && counts.size() == 25;
  std::ostringstream os;
  if (pass) {
    os << "exact: all " << counts.size()
       << " depth-2 zeros trees match the 4-ary tree law (3^6 labelings)";
  } else {
    os << "FAILED: depth-2 zeros-tree law mismatch over " << counts.size() << " trees";
  }
  return {pass, os.str()};
}

CheckResult check_zeros_sampled(std::uint64_t seeds, int depth, std::uint64_t master_seed,
                                double confidence) {
  if (depth < 1 || depth > 8) throw std::invalid_argument("sampled zeros depth must be 1..8");
  std::uint64_t counts[4] = {0, 0, 0, 0};
  std::uint64_t total = 0;
  for (std::uint64_t i = 0; i < seeds; ++i) {
    const StreamFunction f(DigitStream(master_seed, i, 3), depth);
    const CodeWord code = induced_gw_code(f, depth);
    total += code.size();
    for (std::uint8_t d : code) counts[d]++;
  }
  bool pass = total > 0;
  std::ostringstream os;
  os << "sampled digit law over " << total << " digits:";
  for (int d = 0; d < 4; ++d) {
    const auto ci = wilson_ci(counts[d], total, confidence);
    const double exact = gw_digit_probability(d).get_d();
    const bool ok = ci.first <= exact && exact <= ci.second;
    pass = pass && ok;
    os << " digit" << d << "=" << static_cast<double>(counts[d]) / static_cast<double>(total)
       << (ok ? " (ok)" : " (OUTSIDE CI)");
  }
  return {pass, os.str()};
}

CheckResult check_support_equality(std::uint64_t seeds, int depth,
                                   std::uint64_t master_seed) {
  if (depth < 1 || depth > 16) throw std::invalid_argument("support depth must be 1..16");
  std::uint64_t mismatches = 0, undetermined = 0;
  for (std::uint64_t i = 0; i < seeds; ++i) {
    const DigitStream source(master_seed, i, 3);
    const DecodeReceipt receipt = decode_tree3(source, depth);
    CodeWord x(3);
    for (std::uint64_t j = 0; j < receipt.digits_consumed; ++j) {
      x.push_back(source.digit_at(j));
    }
    const SupportTree st = support_tree(support_measure_code(x), depth, 2);
    undetermined += st.count(NodeStatus::Undetermined);
    for (int d = 0; d <= depth; ++d) {
      if (st.in_level(d) != receipt.tree.level(d)) {
        ++mismatches;
        break;
      }
    }
  }
  const bool pass = mismatches == 0 && undetermined == 0;
  std::ostringstream os;
  os << seeds << " seeds at depth " << depth << ": " << mismatches << " mismatches, "
     << undetermined << " undetermined nodes";
  return {pass, os.str()};
}

ThirdPushforwardResult check_third_pushforward(std::uint64_t seeds, int depth,
                                               unsigned max_bits, std::uint64_t master_seed,
                                               double confidence) {
  if (depth < 1 || depth > 12) throw std::invalid_argument("third depth must be 1..12");
  ThirdPushforwardResult res;
  for (std::uint64_t i = 0; i < seeds; ++i) {
    const MeasureCode m = MeasureCode::uniform_random(DigitStream(master_seed, i, 2));
    // Walk the 1/3-support frontier, counting digits and pruning undetermined
    // nodes instead of failing.
    FiniteTree tree(depth);
    for (int d = 0; d < depth; ++d) {
      const std::vector<std::uint64_t> current = tree.level(d);
      for (std::uint64_t value : current) {
        const BinaryWord node{value, d};
        switch (classify_third(m, index_of(node), max_bits)) {
          case ThirdCase::RightOnly:
            res.counts[1]++;
            ++res.digits;
            tree.add(node.child(1));
            break;
          case ThirdCase::LeftOnly:
            res.counts[0]++;
            ++res.digits;
            tree.add(node.child(0));
            break;
          case ThirdCase::Both:
            res.counts[2]++;
            ++res.digits;
            tree.add(node.child(0));
            tree.add(node.child(1));
            break;
          case ThirdCase::Undetermined:
            ++res.undetermined;
            break;
        }
      }
    }
  }
  res.pass = res.digits > 0;
  std::ostringstream os;
  os << res.digits << " digits from " << seeds << " seeds (depth " << depth << ", max_bits "
     << max_bits << "), " << res.undetermined << " undetermined:";
  for (int d = 0; d < 3; ++d) {
    const auto ci = wilson_ci(res.counts[d], res.digits, confidence);
    const bool ok = ci.first <= 1.0 / 3.0 && 1.0 / 3.0 <= ci.second;
    res.pass = res.pass && ok;
    os << " digit" << d << "="
       << static_cast<double>(res.counts[d]) / static_cast<double>(res.digits)
       << (ok ? " (ok)" : " (OUTSIDE CI)");
  }
  res.summary = os.str();
  return res;
}

}  // namespace cantor
