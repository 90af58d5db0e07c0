#pragma once

#include "adderlab/netlist.hpp"

#include <cstdint>
#include <vector>

namespace adderlab::detail {

// Dense net numbering shared by the exporters: input ports in declaration
// order, then constants, then gate outputs in topological order.
struct DenseNumbering {
  std::vector<std::uint32_t> of_net;      // NetId::index -> dense number
  std::vector<std::size_t> gate_order;    // rank -> gate index
  std::vector<std::size_t> gate_rank;     // gate index -> rank
};

DenseNumbering number_nets(const Netlist& netlist);

}  // namespace adderlab::detail
