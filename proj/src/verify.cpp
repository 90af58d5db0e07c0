#include "adderlab/verify.hpp"

#include <algorithm>
#include <array>
#include <future>
#include <random>
#include <thread>
#include <tuple>

namespace adderlab {

OracleSum oracle_add(std::uint64_t a, std::uint64_t b, bool cin, unsigned width) {
  if (width == 0 || width > 64) {
    throw Error(Errc::OperandOutOfRange, "width " + std::to_string(width) + " outside 1..64");
  }
  const std::uint64_t mask = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  if (a > mask || b > mask) {
    throw Error(Errc::OperandOutOfRange, "operand does not fit in " + std::to_string(width) +
                                             " bits");
  }
  if (width < 64) {
    const std::uint64_t total = a + b + (cin ? 1 : 0);
    return {total & mask, (total >> width) != 0};
  }
  const std::uint64_t partial = a + b;
  const std::uint64_t total = partial + (cin ? 1 : 0);
  return {total, partial < a || total < partial};
}

namespace {

struct PortBinding {
  unsigned width = 0;
  std::vector<std::size_t> a_slot;  // positions in the input-port list
  std::vector<std::size_t> b_slot;
  std::size_t cin_slot = 0;
  std::vector<std::uint32_t> sum_net;
  std::uint32_t cout_net = 0;
};

std::size_t input_slot(const Netlist& netlist, const std::string& name) {
  const auto inputs = netlist.inputs();
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    if (inputs[k].name == name) return k;
  }
  throw Error(Errc::PortContractViolation,
              "'" + netlist.name() + "' has no input port '" + name + "'");
}

std::uint32_t output_net(const Netlist& netlist, const std::string& name) {
  const Port* port = netlist.find_output(name);
  if (port == nullptr) {
    throw Error(Errc::PortContractViolation,
                "'" + netlist.name() + "' has no output port '" + name + "'");
  }
  return port->net.index;
}

PortBinding bind_ports(const Netlist& netlist, unsigned width) {
  if (width == 0 || width > 64) {
    throw Error(Errc::PortContractViolation, "width " + std::to_string(width) + " outside 1..64");
  }
  PortBinding bind;
  bind.width = width;
  for (unsigned i = 0; i < width; ++i) {
    const std::string bit = std::to_string(i);
    bind.a_slot.push_back(input_slot(netlist, "a_" + bit));
    bind.b_slot.push_back(input_slot(netlist, "b_" + bit));
    bind.sum_net.push_back(output_net(netlist, "s_" + bit));
  }
  bind.cin_slot = input_slot(netlist, "cin");
  bind.cout_net = output_net(netlist, "cout");
  if (netlist.inputs().size() != 2 * std::size_t{width} + 1) {
    throw Error(Errc::PortContractViolation,
                "'" + netlist.name() + "' has inputs beyond a_*, b_*, cin for width " +
                    std::to_string(width));
  }
  return bind;
}

OracleSum read_lane(const PortBinding& bind, std::span<const std::uint64_t> value, unsigned lane) {
  OracleSum got;
  for (unsigned j = 0; j < bind.width; ++j) {
    got.sum |= ((value[bind.sum_net[j]] >> lane) & 1U) << j;
  }
  got.cout = ((value[bind.cout_net] >> lane) & 1U) != 0;
  return got;
}

void keep_smallest(std::vector<Mismatch>& failures) {
  std::sort(failures.begin(), failures.end(), [](const Mismatch& x, const Mismatch& y) {
    return std::tie(x.a, x.b, x.cin) < std::tie(y.a, y.b, y.cin);
  });
  if (failures.size() > kFailureCap) failures.resize(kFailureCap);
}

// Exhaustive enumeration: case index i packs (a, b, cin) as
// a << (width + 1) | b << 1 | cin, so ascending i is ascending (a, b, cin).
// Batch n covers cases [64n, 64n + 64).
struct CaseSpace {
  unsigned bits = 0;
  std::uint64_t cases = 0;
  std::uint64_t batches = 0;
};

CaseSpace case_space(unsigned width, std::uint64_t case_cap) {
  const unsigned bits = 2 * width + 1;
  if (bits > 62 || (std::uint64_t{1} << bits) > case_cap) {
    throw Error(Errc::ExhaustiveTooLarge, "width " + std::to_string(width) + " needs 2^" +
                                              std::to_string(bits) + " cases, cap is " +
                                              std::to_string(case_cap));
  }
  const std::uint64_t cases = std::uint64_t{1} << bits;
  return {bits, cases, (cases + 63) / 64};
}

// Lane L of batch `base` holds case base + L; the low six case bits follow
// fixed patterns, the rest are constant across the batch.
std::vector<std::uint64_t> batch_inputs(const Netlist& netlist, const PortBinding& bind,
                                        std::uint64_t base) {
  static constexpr std::array<std::uint64_t, 6> kLanePattern = {
      0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
      0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL};
  auto case_bit = [&](unsigned k) -> std::uint64_t {
    if (k < kLanePattern.size()) return kLanePattern[k];
    return ((base >> k) & 1U) != 0 ? ~std::uint64_t{0} : 0;
  };
  std::vector<std::uint64_t> words(netlist.inputs().size(), 0);
  words[bind.cin_slot] = case_bit(0);
  for (unsigned j = 0; j < bind.width; ++j) {
    words[bind.b_slot[j]] = case_bit(j + 1);
    words[bind.a_slot[j]] = case_bit(j + bind.width + 1);
  }
  return words;
}

std::uint64_t lane_mask(const CaseSpace& space, std::uint64_t base) {
  const std::uint64_t lanes = std::min<std::uint64_t>(64, space.cases - base);
  return lanes == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << lanes) - 1;
}

struct PartialReport {
  std::uint64_t failure_count = 0;
  std::vector<Mismatch> failures;
};

PartialReport check_batches(const Netlist& netlist, const PortBinding& bind,
                            const CaseSpace& space, std::uint64_t first, std::uint64_t last) {
  PartialReport part;
  const std::uint64_t mask = (std::uint64_t{1} << bind.width) - 1;
  for (std::uint64_t n = first; n < last; ++n) {
    const std::uint64_t base = n * 64;
    const auto value = netlist.simulate(batch_inputs(netlist, bind, base));
    const std::uint64_t lanes = std::min<std::uint64_t>(64, space.cases - base);
    for (unsigned lane = 0; lane < lanes; ++lane) {
      const std::uint64_t i = base + lane;
      const bool cin = (i & 1U) != 0;
      const std::uint64_t b = (i >> 1) & mask;
      const std::uint64_t a = i >> (bind.width + 1);
      const OracleSum expected = oracle_add(a, b, cin, bind.width);
      const OracleSum got = read_lane(bind, value, lane);
      if (got == expected) continue;
      ++part.failure_count;
      if (part.failures.size() < kFailureCap) part.failures.push_back({a, b, cin, expected, got});
    }
  }
  return part;
}

}  // namespace

EquivalenceReport check_exhaustive(const Netlist& netlist, unsigned width,
                                   const ExhaustiveOptions& options) {
  const PortBinding bind = bind_ports(netlist, width);
  const CaseSpace space = case_space(width, options.case_cap);
  netlist.topo_order();  // surface CombinationalLoop before spawning workers

  unsigned workers = options.workers == 0 ? std::max(1U, std::thread::hardware_concurrency())
                                          : options.workers;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, space.batches));

  std::vector<PartialReport> parts;
  if (workers <= 1) {
    parts.push_back(check_batches(netlist, bind, space, 0, space.batches));
  } else {
    std::vector<std::future<PartialReport>> pending;
    const std::uint64_t per = (space.batches + workers - 1) / workers;
    for (std::uint64_t first = 0; first < space.batches; first += per) {
      const std::uint64_t last = std::min(space.batches, first + per);
      pending.push_back(std::async(std::launch::async, [&, first, last] {
        return check_batches(netlist, bind, space, first, last);
      }));
    }
    for (auto& f : pending) parts.push_back(f.get());
  }

  EquivalenceReport report;
  report.mode = CheckMode::Exhaustive;
  report.width = width;
  report.cases_checked = space.cases;
  for (auto& part : parts) {
    report.failure_count += part.failure_count;
    report.failures.insert(report.failures.end(), part.failures.begin(), part.failures.end());
  }
  keep_smallest(report.failures);
  return report;
}

EquivalenceReport check_random(const Netlist& netlist, unsigned width, std::uint64_t samples,
                               std::uint64_t seed) {
  const PortBinding bind = bind_ports(netlist, width);
  const std::uint64_t mask = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;

  struct Case {
    std::uint64_t a;
    std::uint64_t b;
    bool cin;
  };
  std::vector<Case> cases = {{0, 0, false}, {mask, mask, true}, {mask, 1, false}, {0, 0, true}};
  std::mt19937_64 gen(seed);
  for (std::uint64_t n = 0; n < samples; ++n) {
    const std::uint64_t a = gen() & mask;
    const std::uint64_t b = gen() & mask;
    const bool cin = (gen() & 1U) != 0;
    cases.push_back({a, b, cin});
  }

  EquivalenceReport report;
  report.mode = CheckMode::Random;
  report.width = width;
  report.seed = seed;
  report.samples = samples;
  report.generator = kRandomGenerator;
  report.cases_checked = cases.size();

  std::vector<std::uint64_t> words(netlist.inputs().size());
  for (std::size_t base = 0; base < cases.size(); base += 64) {
    const std::size_t lanes = std::min<std::size_t>(64, cases.size() - base);
    std::fill(words.begin(), words.end(), 0);
    for (std::size_t lane = 0; lane < lanes; ++lane) {
      const Case& c = cases[base + lane];
      for (unsigned j = 0; j < width; ++j) {
        words[bind.a_slot[j]] |= ((c.a >> j) & 1U) << lane;
        words[bind.b_slot[j]] |= ((c.b >> j) & 1U) << lane;
      }
      words[bind.cin_slot] |= std::uint64_t{c.cin ? 1U : 0U} << lane;
    }
    const auto value = netlist.simulate(words);
    for (std::size_t lane = 0; lane < lanes; ++lane) {
      const Case& c = cases[base + lane];
      const OracleSum expected = oracle_add(c.a, c.b, c.cin, width);
      const OracleSum got = read_lane(bind, value, static_cast<unsigned>(lane));
      if (got == expected) continue;
      ++report.failure_count;
      report.failures.push_back({c.a, c.b, c.cin, expected, got});
      if (report.failures.size() > 8 * kFailureCap) keep_smallest(report.failures);
    }
  }
  keep_smallest(report.failures);
  return report;
}

bool probe_invariant_carry_exclusive(const Netlist& netlist, unsigned width,
                                     std::uint64_t case_cap) {
  if (!netlist.carry_merges()) {
    throw Error(Errc::MissingStageMetadata,
                "'" + netlist.name() + "' carries no carry-merge stage metadata");
  }
  const PortBinding bind = bind_ports(netlist, width);
  const CaseSpace space = case_space(width, case_cap);
  const auto& merges = *netlist.carry_merges();
  for (std::uint64_t n = 0; n < space.batches; ++n) {
    const std::uint64_t base = n * 64;
    const auto value = netlist.simulate(batch_inputs(netlist, bind, base));
    const std::uint64_t live = lane_mask(space, base);
    for (const CarryMerge& merge : merges) {
      if ((value[merge.block_carry.index] & value[merge.increment_carry.index] & live) != 0) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace adderlab
