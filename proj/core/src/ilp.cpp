#include "swaploc/ilp.hpp"

#include <charconv>
#include <fstream>
#include <ostream>

namespace swaploc {
namespace {

std::string number(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

std::string x_name(NodeId i, NodeId j) {
  return "x_" + std::to_string(i) + "_" + std::to_string(j);
}

}  // namespace

void write_ilp(const Instance& instance, int p, std::ostream& out) {
  const int n = instance.size();
  if (p < 1 || p > n) {
    throw InvalidArgument("p must lie in 1.." + std::to_string(n) + ", got " + std::to_string(p));
  }
  out << "\\ p-median model: n = " << n << ", p = " << p << "\n";
  out << "\\ generator = " << instance.meta().generator << ", seed = " << instance.meta().seed
      << "\n";
  out << "Minimize\n obj:";
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      out << "\n   + " << number(instance.demand(i) * instance.distance(i, j)) << " "
          << x_name(i, j);
    }
  }
  out << "\nSubject To\n";
  for (NodeId i = 0; i < n; ++i) {
    out << " assign_" << i << ":";
    for (NodeId j = 0; j < n; ++j) out << " + " << x_name(i, j);
    out << " = 1\n";
  }
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      out << " link_" << i << "_" << j << ": " << x_name(i, j) << " - y_" << j << " <= 0\n";
    }
  }
  out << " cardinality:";
  for (NodeId j = 0; j < n; ++j) out << " + y_" << j;
  out << " = " << p << "\n";
  out << "Binary\n";
  for (NodeId j = 0; j < n; ++j) out << " y_" << j << "\n";
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) out << " " << x_name(i, j) << "\n";
  }
  out << "End\n";
}

void export_ilp(const Instance& instance, int p, const std::filesystem::path& path) {
  if (p < 1 || p > instance.size()) {
    throw InvalidArgument("p must lie in 1.." + std::to_string(instance.size()) + ", got " +
                          std::to_string(p));
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_ilp(instance, p, out);
  out.flush();
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace swaploc
