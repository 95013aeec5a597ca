#pragma once

#include "zsym/metric.hpp"
#include "zsym/structures.hpp"
#include "zsym/tensor_field.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zsym {

/// Machine-readable catalog entry: a metric together with its published
/// component tables and the classification the catalog asserts for it.
struct CorpusEntry {
  std::string name;
  MetricSpec metric;

  /// Expected nonzero canonical components per tensor key:
  ///   "R" (0,4), "S" (0,2), "DR" (0,5), "DS" (0,3), "Z" (0,2), "DZ" (0,3).
  /// Index tuples are 0-based canonical representatives.
  std::map<std::string, std::vector<std::pair<IndexTuple, Expr>>> expected;

  struct Expectations {
    std::optional<SolveStatus> cyclic_S, weak_S, cyclic_Z, weak_Z;
    std::optional<int> cyclic_S_dim, cyclic_Z_dim, weak_S_dim, weak_Z_dim;
    std::optional<SolveStatus> recurrent_R, recurrent_S;
    std::optional<bool> proper;  // headline structure of the entry
    std::optional<bool> gray_a, codazzi;
    std::optional<RankOneVerdict> rank_one;
    std::optional<bool> f_zero;
    std::vector<std::string> reduced_witness;  // expected unique E components
    std::vector<std::string> recurrence_pi;    // expected unique pi components
  } expects;

  std::string literature_note;
  /// True for entries transcribed from a cited catalog rather than restated
  /// in full at the source; gated behind include_transcribed.
  bool transcribed = false;
};

/// The built-in example metrics. Transcribed entries are excluded unless
/// requested explicitly.
std::vector<CorpusEntry> builtin_entries(bool include_transcribed = false);

std::vector<std::string> builtin_names(bool include_transcribed = false);

/// Throws Error for unknown names. Transcribed entries are addressable by
/// name regardless of the gate.
CorpusEntry builtin_entry(const std::string& name);

}  // namespace zsym
