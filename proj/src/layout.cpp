#include "quso/layout.hpp"

#include <stdexcept>

#include "quso/thermal.hpp"

namespace quso {

int bits_for(int count) {
  int b = 0;
  while ((1 << b) < count) ++b;
  return b;
}

RegisterLayout::RegisterLayout(
    std::vector<std::pair<std::string, int>> regs) {
  int off = 0;
  for (auto& [name, width] : regs) {
    if (width < 0) throw std::invalid_argument("negative register width");
    regs_.push_back({name, width, off});
    off += width;
  }
  total_ = off;
  if (total_ > 30) throw std::invalid_argument("layout too large to simulate");
}

bool RegisterLayout::has(const std::string& name) const {
  for (const auto& r : regs_)
    if (r.name == name) return true;
  return false;
}

const Register& RegisterLayout::reg(const std::string& name) const {
  for (const auto& r : regs_)
    if (r.name == name) return r;
  throw std::invalid_argument("no register named " + name);
}

int RegisterLayout::qubit_for_bit(const std::string& name, int bit) const {
  const Register& r = reg(name);
  if (bit < 0 || bit >= r.width)
    throw std::invalid_argument("register bit out of range");
  return r.offset + r.width - 1 - bit;
}

std::vector<int> RegisterLayout::qubits(const std::string& name) const {
  const Register& r = reg(name);
  std::vector<int> qs(r.width);
  for (int i = 0; i < r.width; ++i) qs[i] = r.offset + i;
  return qs;
}

uint64_t RegisterLayout::register_value(const std::string& name,
                                        uint64_t index) const {
  const Register& r = reg(name);
  const int shift = total_ - r.offset - r.width;
  return (index >> shift) & ((uint64_t{1} << r.width) - 1);
}

uint64_t RegisterLayout::with_register_value(const std::string& name,
                                             uint64_t index,
                                             uint64_t value) const {
  const Register& r = reg(name);
  const int shift = total_ - r.offset - r.width;
  const uint64_t mask = ((uint64_t{1} << r.width) - 1) << shift;
  return (index & ~mask) | ((value << shift) & mask);
}

RegisterLayout full_layout(const ThermalNetwork& net, int phase_bits) {
  const int m = net.edge_count();
  return RegisterLayout({{"c", m},
                         {"p", phase_bits},
                         {"q", 1},
                         {"l", bits_for(m + 1)},
                         {"f", 1},
                         {"l'", 1},
                         {"d", bits_for(net.node_count)}});
}

RegisterLayout solver_layout(const ThermalNetwork& net, bool with_q) {
  const int m = net.edge_count();
  std::vector<std::pair<std::string, int>> regs;
  if (with_q) regs.push_back({"q", 1});
  regs.push_back({"l", bits_for(m + 1)});
  regs.push_back({"f", 1});
  regs.push_back({"l'", 1});
  regs.push_back({"d", bits_for(net.node_count)});
  return RegisterLayout(regs);
}

RegisterLayout encoding_layout(const ThermalNetwork& net) {
  const int m = net.edge_count();
  return RegisterLayout({{"c", m},
                         {"l", bits_for(m + 1)},
                         {"f", 1},
                         {"l'", 1},
                         {"d", bits_for(net.node_count)}});
}

RegisterLayout shortcut_layout(int edge_count, int phase_bits) {
  return RegisterLayout({{"c", edge_count}, {"p", phase_bits}, {"d", 1}});
}

}  // namespace quso
