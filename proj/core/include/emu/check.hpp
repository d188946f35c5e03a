#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace emu {

enum class OracleKind { Reduction, Parity };

struct CheckOptions {
  std::uint64_t seed = 7;
  std::size_t cases = 200;
  int max_vars = 4;
  std::int64_t max_weight = 2;
  std::uint64_t max_bound = 8;
  OracleKind oracle = OracleKind::Reduction;
  /// Harness self-test: corrupt the evaluator's answer before comparing.
  bool mutate = false;
};

struct CheckResult {
  std::size_t cases = 0;
  std::size_t mismatches = 0;
  std::size_t errors = 0;  // cases aborted by an internal-consistency error
  std::string transcript;  // one line per case, deterministic for a seed
  /// Game file (with formula) reproducing the first failing case.
  std::optional<std::string> counterexample;
  std::optional<std::size_t> counterexample_case;
  std::optional<std::uint64_t> counterexample_bound;

  bool ok() const { return mismatches == 0 && errors == 0; }
};

/// Seeded randomized differential test of the energy evaluator. The
/// reduction oracle compares every builtin (and its dual) against the
/// classical solve of the reduced game; the parity oracle compares the
/// symbolic parity solve with the explicit energy parity game.
CheckResult run_check(const CheckOptions& opt);

}  // namespace emu
