#pragma once

// Gate-level adder generators: half/full adders, ripple-carry, single-level
// carry-lookahead blocks, half-adder incrementers, and carry-increment adders
// assembled from RCA or CLA blocks.
//
// Multi-bit adders follow one port contract: inputs a_<i>, b_<i> (bit 0 is
// the LSB) and cin; outputs s_<i> and cout.

#include "adderlab/netlist.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace adderlab {

enum class Architecture { Rca, Cla, CiaRca, CiaCla };

/// "rca", "cla", "cia_rca", "cia_cla".
std::string_view to_string(Architecture arch) noexcept;
std::optional<Architecture> parse_architecture(std::string_view text) noexcept;
bool is_carry_increment(Architecture arch) noexcept;

/// Fan-in limit for wide lookahead gates; nullopt means unlimited.
using MaxFanin = std::optional<unsigned>;

struct AdderSpec {
  Architecture arch = Architecture::CiaCla;
  unsigned width = 8;
  unsigned block_size = 4;  // only meaningful for the carry-increment variants
  MaxFanin max_fanin;

  friend bool operator==(const AdderSpec&, const AdderSpec&) = default;
};

/// Netlist name for a spec, e.g. "cia_cla_w8_b4" or "cla_w4_f2".
std::string adder_name(const AdderSpec& spec);

enum class BlockKind { Rca, Cla };

/// Carry-in tied to every block after the first. Only Zero yields a correct
/// adder; One exists to build deliberately broken circuits for the verifier.
enum class LaterBlockCarryIn { Zero, One };

/// Inputs a, b; outputs s = a^b, c = a&b.
Netlist build_half_adder();
/// Inputs a, b, cin; outputs s, cout. Two half adders and an OR.
Netlist build_full_adder();
Netlist build_rca(unsigned width);
Netlist build_cla_block(unsigned width, MaxFanin max_fanin = std::nullopt);
/// Inputs x_<i>, cin; outputs y_<i>, cout. A ripple chain of half adders.
Netlist build_incrementer(unsigned width);

/// Carry-increment adder. Block 0 adds its slice with the external carry-in;
/// each later block adds with its carry-in tied off, and a half-adder
/// incrementer folds in the previous stage's carry. The stage carry is the OR
/// of the block carry and the incrementer carry; both are recorded as stage
/// metadata. Gates are grouped "block<k>", "inc<k>" and "merge<k>".
Netlist build_cia(unsigned width, unsigned block_size, BlockKind block_kind,
                  MaxFanin max_fanin = std::nullopt,
                  LaterBlockCarryIn later_cin = LaterBlockCarryIn::Zero);

/// Validates the spec and dispatches to the matching builder.
Netlist build_adder(const AdderSpec& spec);

}  // namespace adderlab
