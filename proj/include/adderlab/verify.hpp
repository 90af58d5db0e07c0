#pragma once

// Functional verification of adder netlists against integer addition.
//
// Any netlist that follows the adder port contract (a_<i>, b_<i>, cin in;
// s_<i>, cout out) can be checked, exhaustively for small widths or by
// seeded random sampling up to 64 bits.

#include "adderlab/netlist.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace adderlab {

struct OracleSum {
  std::uint64_t sum = 0;
  bool cout = false;

  friend bool operator==(const OracleSum&, const OracleSum&) = default;
};

/// a + b + cin truncated to `width` bits, with the overflow as carry-out.
/// Widths 1..64; operands must fit in `width` bits.
OracleSum oracle_add(std::uint64_t a, std::uint64_t b, bool cin, unsigned width);

struct Mismatch {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  bool cin = false;
  OracleSum expected;
  OracleSum got;

  friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

enum class CheckMode { Exhaustive, Random };

inline constexpr std::size_t kFailureCap = 32;
inline constexpr std::uint64_t kDefaultCaseCap = std::uint64_t{1} << 21;
/// Identity of the sampling generator recorded in random-mode reports.
inline constexpr const char* kRandomGenerator = "mt19937_64";

struct EquivalenceReport {
  CheckMode mode = CheckMode::Exhaustive;
  unsigned width = 0;
  std::uint64_t cases_checked = 0;
  /// Exact number of mismatching cases.
  std::uint64_t failure_count = 0;
  /// The first kFailureCap mismatches in ascending (a, b, cin) order.
  std::vector<Mismatch> failures;
  // Random mode only.
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::string generator;

  bool passed() const noexcept { return failure_count == 0; }

  friend bool operator==(const EquivalenceReport&, const EquivalenceReport&) = default;
};

struct ExhaustiveOptions {
  /// Largest input space (2^(2*width+1) cases) the check will enumerate.
  std::uint64_t case_cap = kDefaultCaseCap;
  /// Worker threads; 0 picks the hardware concurrency. The report does not
  /// depend on this value.
  unsigned workers = 1;
};

EquivalenceReport check_exhaustive(const Netlist& netlist, unsigned width,
                                   const ExhaustiveOptions& options = {});

/// Checks the four boundary rows (0,0,0), (max,max,1), (max,1,0), (0,0,1)
/// followed by `samples` draws from mt19937_64 seeded with `seed`. Each draw
/// consumes three outputs: a, b (masked to width) and cin (low bit).
EquivalenceReport check_random(const Netlist& netlist, unsigned width, std::uint64_t samples,
                               std::uint64_t seed);

/// True iff no carry-merge OR of a carry-increment netlist ever sees both of
/// its inputs high, over every input assignment.
bool probe_invariant_carry_exclusive(const Netlist& netlist, unsigned width,
                                     std::uint64_t case_cap = kDefaultCaseCap);

}  // namespace adderlab
