#include "cantor/json_io.hpp"

#include <json.hpp>

namespace cantor {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

std::string to_json(const FiniteTree& tree) {
  ordered j;
  j["depth"] = tree.depth();
  ordered levels = ordered::array();
  for (int d = 0; d <= tree.depth(); ++d) {
    ordered level = ordered::array();
    for (std::uint64_t v : tree.level(d)) level.push_back(BinaryWord{v, d}.str());
    levels.push_back(std::move(level));
  }
  j["levels"] = std::move(levels);
  return j.dump();
}

std::string to_json(const FunctionCode& f) {
  ordered j;
  j["depth"] = f.depth();
  j["code"] = f.code().str();
  return j.dump();
}

std::string measure_to_json(const MeasureCode& m, int depth, unsigned bits_per_column) {
  ordered j;
  ordered columns = ordered::array();
  auto emit = [&](std::uint64_t index) {
    ordered col;
    col["index"] = index;
    const auto it = m.explicit_columns().find(index);
    if (it != m.explicit_columns().end() && !it->second.periodic.empty()) {
      std::string bits;
      for (std::uint8_t b : it->second.bits) bits.push_back(static_cast<char>('0' + b));
      col["bits"] = bits;
      col["periodic"] = it->second.periodic;
    } else {
      std::string bits;
      for (unsigned k = 0; k < bits_per_column; ++k) {
        bits.push_back(static_cast<char>('0' + m.column_bit(index, k)));
      }
      col["bits"] = bits;
    }
    columns.push_back(std::move(col));
  };
  const std::uint64_t node_count = (std::uint64_t{1} << (depth + 1)) - 1;
  for (std::uint64_t index = 0; index < node_count; ++index) emit(index);
  j["columns"] = std::move(columns);
  return j.dump();
}

std::string to_json(const EstimateRecord& record) {
  ordered j;
  j["name"] = record.spec.name;
  ordered params = ordered::object();
  for (const auto& [key, value] : record.spec.params) params[key] = value;
  j["params"] = std::move(params);
  j["trials"] = record.spec.trials;
  j["depth"] = record.spec.depth;
  j["seed"] = record.spec.master_seed;
  j["confidence"] = record.spec.confidence;
  j["estimate"] = record.primary.estimate;
  j["ci"] = ordered::array({record.primary.ci_lo, record.primary.ci_hi});
  if (record.upper) {
    j["upper_estimate"] = record.upper->estimate;
    j["upper_ci"] = ordered::array({record.upper->ci_lo, record.upper->ci_hi});
  }
  if (record.reference) {
    j["reference"] = ordered::array({record.reference->first, record.reference->second});
  } else {
    j["reference"] = nullptr;
  }
  j["verdict"] = record.verdict;
  j["failures"] = record.failures;
  return j.dump();
}

}  // namespace cantor
