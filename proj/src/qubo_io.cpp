#include <algorithm>
#include <sstream>

#include "text_util.hpp"
#include "topomap/error.hpp"
#include "topomap/qubo.hpp"

namespace topomap {

namespace {

std::size_t linear_count(const QuboProblem& q) {
  std::size_t k = 0;
  for (double h : q.linear)
    if (h != 0.0) ++k;
  return k;
}

void write_meta(std::ostream& os, const QuboProblem& q, char comment) {
  os << comment << " topomap flavor " << to_string(q.flavor) << '\n'
     << comment << " topomap units " << q.units << '\n'
     << comment << " topomap offset " << detail::fmt(q.offset) << '\n'
     << comment << " topomap penalty " << detail::fmt(q.penalty) << '\n'
     << comment << " topomap pref " << detail::fmt(q.pref) << '\n'
     << comment << " topomap scale " << detail::fmt(q.scale) << '\n';
}

std::string qmasm_name(const VarKey& k) {
  return "x_" + std::to_string(k.task) + "_" + std::to_string(k.unit);
}

}  // namespace

std::string export_qubo(const QuboProblem& q) {
  std::ostringstream os;
  write_meta(os, q, 'c');
  for (std::size_t i = 0; i < q.var_map.size(); ++i)
    os << "c var " << i << ' ' << q.var_map[i].task << ' ' << q.var_map[i].unit << '\n';
  os << "p qubo 0 " << q.n_vars() << ' ' << linear_count(q) << ' ' << q.couplers.size()
     << '\n';
  for (std::size_t i = 0; i < q.n_vars(); ++i)
    if (q.linear[i] != 0.0) os << i << ' ' << i << ' ' << detail::fmt(q.linear[i]) << '\n';
  for (const auto& c : q.couplers)
    os << c.i << ' ' << c.j << ' ' << detail::fmt(c.value) << '\n';
  return os.str();
}

std::string export_qmasm(const QuboProblem& q) {
  std::ostringstream os;
  write_meta(os, q, '#');
  for (std::size_t i = 0; i < q.n_vars(); ++i)
    if (q.linear[i] != 0.0)
      os << qmasm_name(q.var_map[i]) << ' ' << detail::fmt(q.linear[i]) << '\n';
  for (const auto& c : q.couplers)
    os << qmasm_name(q.var_map[c.i]) << ' ' << qmasm_name(q.var_map[c.j]) << ' '
       << detail::fmt(c.value) << '\n';
  return os.str();
}

QuboProblem parse_qubo(std::string_view text) {
  QuboProblem q;
  bool header = false;
  std::size_t expect_linear = 0, expect_couplers = 0;
  std::size_t seen_linear = 0;
  std::vector<VarKey> vars;
  for (const auto& line : detail::tokenize(text, '\0')) {
    const auto& tok = line.tokens;
    if (tok[0] == "c") {
      if (tok.size() == 5 && tok[1] == "var") {
        auto i = static_cast<std::size_t>(detail::to_int(tok[2], line.number));
        if (i != vars.size()) throw ParseError(line.number, "variable map out of order");
        vars.push_back({detail::to_int(tok[3], line.number),
                        detail::to_int(tok[4], line.number)});
      } else if (tok.size() == 4 && tok[1] == "topomap") {
        if (tok[2] == "flavor")
          q.flavor = tok[3] == "quantum" ? Flavor::quantum : Flavor::classical;
        else if (tok[2] == "units")
          q.units = static_cast<std::size_t>(detail::to_int(tok[3], line.number));
        else if (tok[2] == "offset")
          q.offset = detail::to_double(tok[3], line.number);
        else if (tok[2] == "penalty")
          q.penalty = detail::to_double(tok[3], line.number);
        else if (tok[2] == "pref")
          q.pref = detail::to_double(tok[3], line.number);
        else if (tok[2] == "scale")
          q.scale = detail::to_double(tok[3], line.number);
      }
      continue;
    }
    if (tok[0] == "p") {
      if (header || tok.size() != 6 || tok[1] != "qubo")
        throw ParseError(line.number, "expected a single `p qubo 0 <max> <nodes> <couplers>`");
      header = true;
      auto n = static_cast<std::size_t>(detail::to_int(tok[3], line.number));
      expect_linear = static_cast<std::size_t>(detail::to_int(tok[4], line.number));
      expect_couplers = static_cast<std::size_t>(detail::to_int(tok[5], line.number));
      q.linear.assign(n, 0.0);
      continue;
    }
    if (!header) throw ParseError(line.number, "weight line before `p qubo` header");
    if (tok.size() != 3) throw ParseError(line.number, "expected `<i> <j> <value>`");
    int i = detail::to_int(tok[0], line.number);
    int j = detail::to_int(tok[1], line.number);
    double v = detail::to_double(tok[2], line.number);
    if (i < 0 || j < 0 || static_cast<std::size_t>(std::max(i, j)) >= q.n_vars())
      throw ParseError(line.number, "variable index out of range");
    if (i == j) {
      q.linear[static_cast<std::size_t>(i)] += v;
      ++seen_linear;
    } else {
      if (i > j) std::swap(i, j);
      q.couplers.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), v,
                            q.penalty > 0 && v >= q.penalty});
    }
  }
  if (!header) throw ParseError(0, "missing `p qubo` header");
  if (seen_linear != expect_linear || q.couplers.size() != expect_couplers)
    throw ParseError(0, "weight line counts disagree with the header");
  std::sort(q.couplers.begin(), q.couplers.end(), [](const Coupler& a, const Coupler& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  for (std::size_t k = 1; k < q.couplers.size(); ++k)
    if (q.couplers[k].i == q.couplers[k - 1].i && q.couplers[k].j == q.couplers[k - 1].j)
      throw ParseError(0, "duplicate coupler " + std::to_string(q.couplers[k].i) + " " +
                              std::to_string(q.couplers[k].j));
  if (!vars.empty()) {
    if (vars.size() != q.n_vars()) throw ParseError(0, "variable map size differs from header");
    q.var_map = std::move(vars);
  }
  return q;
}

}  // namespace topomap
