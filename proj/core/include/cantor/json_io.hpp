#pragma once

#include <string>

#include "cantor/experiment.hpp"
#include "cantor/function.hpp"
#include "cantor/measure.hpp"
#include "cantor/tree.hpp"

namespace cantor {

/// {"depth": d, "levels": [["..."], ["0","1"], ...]} with each level sorted
/// lexicographically.
std::string to_json(const FiniteTree& tree);

/// {"depth": d, "code": "0120..."}.
std::string to_json(const FunctionCode& f);

/// {"columns": [{"index": n, "bits": "01...", "periodic": "0"?}, ...]}.
/// Serializes explicit columns only; `bits_per_column` materializes that many
/// leading bits for stream-backed columns of the nodes up to `depth`.
std::string measure_to_json(const MeasureCode& m, int depth, unsigned bits_per_column);

/// One JSON line per record: {name, params, trials, depth, seed, estimate,
/// ci, reference|null, verdict, failures} plus upper_estimate/upper_ci for
/// bracketing experiments.
std::string to_json(const EstimateRecord& record);

}  // namespace cantor
