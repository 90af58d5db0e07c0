#include "adderlab/adders.hpp"

#include <vector>

namespace adderlab {

std::string_view to_string(Architecture arch) noexcept {
  switch (arch) {
    case Architecture::Rca: return "rca";
    case Architecture::Cla: return "cla";
    case Architecture::CiaRca: return "cia_rca";
    case Architecture::CiaCla: return "cia_cla";
  }
  return "?";
}

std::optional<Architecture> parse_architecture(std::string_view text) noexcept {
  for (Architecture arch :
       {Architecture::Rca, Architecture::Cla, Architecture::CiaRca, Architecture::CiaCla}) {
    if (to_string(arch) == text) return arch;
  }
  return std::nullopt;
}

bool is_carry_increment(Architecture arch) noexcept {
  return arch == Architecture::CiaRca || arch == Architecture::CiaCla;
}

namespace {

struct SumCarry {
  NetId sum;
  NetId carry;
};

struct AdderNets {
  std::vector<NetId> sum;
  NetId carry;
};

bool uses_lookahead(Architecture arch) {
  return arch == Architecture::Cla || arch == Architecture::CiaCla;
}

std::string fanin_suffix(MaxFanin max_fanin) {
  return max_fanin ? "_f" + std::to_string(*max_fanin) : "";
}

void check_width(unsigned width, std::string_view what) {
  if (width == 0) throw Error(Errc::ZeroWidth, std::string(what) + " must be at least 1");
}

void check_fanin(MaxFanin max_fanin) {
  if (max_fanin && *max_fanin < 2) {
    throw Error(Errc::BadFanIn, "max fan-in " + std::to_string(*max_fanin) + " is below 2");
  }
}

SumCarry half_adder(NetlistBuilder& nb, NetId x, NetId y) {
  NetId s = nb.add_gate(GateKind::Xor, {x, y});
  NetId c = nb.add_gate(GateKind::And, {x, y});
  return {s, c};
}

SumCarry full_adder(NetlistBuilder& nb, NetId a, NetId b, NetId cin) {
  auto [p, g] = half_adder(nb, a, b);
  auto [s, t] = half_adder(nb, p, cin);
  return {s, nb.add_gate(GateKind::Or, {g, t})};
}

AdderNets ripple(NetlistBuilder& nb, std::span<const NetId> a, std::span<const NetId> b,
                 NetId cin) {
  AdderNets out{{}, cin};
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [s, c] = full_adder(nb, a[i], b[i], out.carry);
    out.sum.push_back(s);
    out.carry = c;
  }
  return out;
}

// One AND/OR over `operands`; split into a balanced tree of gates when the
// operand count exceeds the fan-in limit. Earlier chunks take the extra
// operands.
NetId wide_gate(NetlistBuilder& nb, GateKind kind, std::span<const NetId> operands,
                MaxFanin max_fanin) {
  if (operands.size() == 1) return operands.front();
  if (!max_fanin || operands.size() <= *max_fanin) return nb.add_gate(kind, operands);

  const std::size_t chunks = *max_fanin;
  const std::size_t base = operands.size() / chunks;
  const std::size_t extra = operands.size() % chunks;
  std::vector<NetId> partial;
  std::size_t at = 0;
  for (std::size_t k = 0; k < chunks; ++k) {
    const std::size_t len = base + (k < extra ? 1 : 0);
    partial.push_back(wide_gate(nb, kind, operands.subspan(at, len), max_fanin));
    at += len;
  }
  return nb.add_gate(kind, partial);
}

// Single-level lookahead: every carry is a sum of products over the block's
// generate/propagate signals and the carry-in,
//   c[i+1] = g[i] | p[i]g[i-1] | ... | p[i]..p[0]cin.
AdderNets lookahead(NetlistBuilder& nb, std::span<const NetId> a, std::span<const NetId> b,
                    NetId cin, MaxFanin max_fanin) {
  const std::size_t w = a.size();
  std::vector<NetId> p;
  std::vector<NetId> g;
  for (std::size_t i = 0; i < w; ++i) {
    auto [pi, gi] = half_adder(nb, a[i], b[i]);
    p.push_back(pi);
    g.push_back(gi);
  }

  std::vector<NetId> carry{cin};
  for (std::size_t i = 0; i < w; ++i) {
    std::vector<NetId> terms{g[i]};
    for (std::size_t len = 1; len <= i + 1; ++len) {
      // p[i] .. p[i-len+1] and then g[i-len], or cin when the run reaches bit 0
      std::vector<NetId> product;
      for (std::size_t k = 0; k < len; ++k) product.push_back(p[i - k]);
      product.push_back(len == i + 1 ? cin : g[i - len]);
      terms.push_back(wide_gate(nb, GateKind::And, product, max_fanin));
    }
    carry.push_back(wide_gate(nb, GateKind::Or, terms, max_fanin));
  }

  AdderNets out{{}, carry.back()};
  for (std::size_t i = 0; i < w; ++i) out.sum.push_back(nb.add_gate(GateKind::Xor, {p[i], carry[i]}));
  return out;
}

AdderNets increment(NetlistBuilder& nb, std::span<const NetId> x, NetId cin) {
  AdderNets out{{}, cin};
  for (NetId xi : x) {
    auto [y, c] = half_adder(nb, xi, out.carry);
    out.sum.push_back(y);
    out.carry = c;
  }
  return out;
}

struct OperandPorts {
  std::vector<NetId> a;
  std::vector<NetId> b;
  NetId cin;
};

OperandPorts declare_operands(NetlistBuilder& nb, unsigned width) {
  OperandPorts ports;
  for (unsigned i = 0; i < width; ++i) ports.a.push_back(nb.declare_input("a_" + std::to_string(i)));
  for (unsigned i = 0; i < width; ++i) ports.b.push_back(nb.declare_input("b_" + std::to_string(i)));
  ports.cin = nb.declare_input("cin");
  return ports;
}

void declare_result(NetlistBuilder& nb, const AdderNets& result) {
  for (std::size_t i = 0; i < result.sum.size(); ++i) {
    nb.declare_output("s_" + std::to_string(i), result.sum[i]);
  }
  nb.declare_output("cout", result.carry);
}

}  // namespace

std::string adder_name(const AdderSpec& spec) {
  std::string name = std::string(to_string(spec.arch)) + "_w" + std::to_string(spec.width);
  if (is_carry_increment(spec.arch)) name += "_b" + std::to_string(spec.block_size);
  if (uses_lookahead(spec.arch)) name += fanin_suffix(spec.max_fanin);
  return name;
}

Netlist build_half_adder() {
  NetlistBuilder nb("half_adder");
  NetId a = nb.declare_input("a");
  NetId b = nb.declare_input("b");
  auto [s, c] = half_adder(nb, a, b);
  nb.declare_output("s", s);
  nb.declare_output("c", c);
  return nb.freeze();
}

Netlist build_full_adder() {
  NetlistBuilder nb("full_adder");
  NetId a = nb.declare_input("a");
  NetId b = nb.declare_input("b");
  NetId cin = nb.declare_input("cin");
  auto [s, cout] = full_adder(nb, a, b, cin);
  nb.declare_output("s", s);
  nb.declare_output("cout", cout);
  return nb.freeze();
}

Netlist build_rca(unsigned width) {
  check_width(width, "RCA width");
  NetlistBuilder nb(adder_name({Architecture::Rca, width, 4, std::nullopt}));
  auto ports = declare_operands(nb, width);
  declare_result(nb, ripple(nb, ports.a, ports.b, ports.cin));
  return nb.freeze();
}

Netlist build_cla_block(unsigned width, MaxFanin max_fanin) {
  check_width(width, "CLA width");
  check_fanin(max_fanin);
  NetlistBuilder nb(adder_name({Architecture::Cla, width, 4, max_fanin}));
  auto ports = declare_operands(nb, width);
  declare_result(nb, lookahead(nb, ports.a, ports.b, ports.cin, max_fanin));
  return nb.freeze();
}

Netlist build_incrementer(unsigned width) {
  check_width(width, "incrementer width");
  NetlistBuilder nb("inc_w" + std::to_string(width));
  std::vector<NetId> x;
  for (unsigned i = 0; i < width; ++i) x.push_back(nb.declare_input("x_" + std::to_string(i)));
  NetId cin = nb.declare_input("cin");
  auto result = increment(nb, x, cin);
  for (unsigned i = 0; i < width; ++i) nb.declare_output("y_" + std::to_string(i), result.sum[i]);
  nb.declare_output("cout", result.carry);
  return nb.freeze();
}

Netlist build_cia(unsigned width, unsigned block_size, BlockKind block_kind, MaxFanin max_fanin,
                  LaterBlockCarryIn later_cin) {
  check_width(width, "CIA width");
  check_width(block_size, "CIA block size");
  if (block_size > width) {
    throw Error(Errc::BlockTooLarge, "block size " + std::to_string(block_size) +
                                         " exceeds width " + std::to_string(width));
  }
  check_fanin(max_fanin);

  const Architecture arch = block_kind == BlockKind::Rca ? Architecture::CiaRca : Architecture::CiaCla;
  std::string name = adder_name({arch, width, block_size, max_fanin});
  if (later_cin == LaterBlockCarryIn::One) name += "_cin1";
  NetlistBuilder nb(std::move(name));
  nb.enable_stage_metadata();
  auto ports = declare_operands(nb, width);

  AdderNets result{{}, ports.cin};
  for (unsigned lo = 0, k = 0; lo < width; lo += block_size, ++k) {
    const std::size_t len = std::min(block_size, width - lo);
    const auto a = std::span<const NetId>(ports.a).subspan(lo, len);
    const auto b = std::span<const NetId>(ports.b).subspan(lo, len);
    const std::string stage = std::to_string(k);

    nb.set_group("block" + stage);
    const NetId block_cin = k == 0 ? ports.cin : nb.constant(later_cin == LaterBlockCarryIn::One);
    AdderNets block = block_kind == BlockKind::Rca ? ripple(nb, a, b, block_cin)
                                                   : lookahead(nb, a, b, block_cin, max_fanin);
    if (k == 0) {
      result = std::move(block);
      continue;
    }

    nb.set_group("inc" + stage);
    AdderNets inc = increment(nb, block.sum, result.carry);
    result.sum.insert(result.sum.end(), inc.sum.begin(), inc.sum.end());

    nb.set_group("merge" + stage);
    result.carry = nb.add_carry_merge(block.carry, inc.carry);
    nb.set_label(result.carry, "carry" + stage);
  }
  nb.set_group("");
  declare_result(nb, result);
  return nb.freeze();
}

Netlist build_adder(const AdderSpec& spec) {
  switch (spec.arch) {
    case Architecture::Rca: return build_rca(spec.width);
    case Architecture::Cla: return build_cla_block(spec.width, spec.max_fanin);
    case Architecture::CiaRca:
      return build_cia(spec.width, spec.block_size, BlockKind::Rca, std::nullopt);
    case Architecture::CiaCla:
      return build_cia(spec.width, spec.block_size, BlockKind::Cla, spec.max_fanin);
  }
  throw Error(Errc::InvariantViolation, "unknown architecture");
}

}  // namespace adderlab
