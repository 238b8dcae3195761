#include "tabsolve/model.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace tabsolve {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::IterationLimit: return "iteration_limit";
    case SolveStatus::Unbounded: return "unbounded";
  }
  return "?";
}

double residual(const Constraint& c, const Vector& x) {
  double lhs = 0.0;
  for (const Term& t : c.terms) lhs += t.coeff * x(t.var);
  switch (c.rel) {
    case Relation::EQ: return std::abs(lhs - c.rhs);
    case Relation::LE: return std::max(0.0, lhs - c.rhs);
    case Relation::GE: return std::max(0.0, c.rhs - lhs);
  }
  return 0.0;
}

int count_suboptimal(const LayoutSpec& spec, const Vector& x, double tol) {
  int n = 0;
  for (const Constraint& c : spec.constraints)
    if (residual(c, x) >= tol) ++n;
  return n;
}

std::string format_double(double d) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

double parse_num(const std::string& s, int line) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError(line, "bad number '" + s + "'");
  if (!std::isfinite(v)) throw ParseError(line, "non-finite number '" + s + "'");
  return v;
}

int parse_int(const std::string& s, int line) {
  int v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError(line, "bad integer '" + s + "'");
  return v;
}

Term parse_term(const std::string& tok, int var_count, int line) {
  auto star = tok.find('*');
  if (tok.size() < 4 || tok[0] != 'x' || star == std::string::npos)
    throw ParseError(line, "malformed term '" + tok + "'");
  Term t;
  t.var = parse_int(tok.substr(1, star - 1), line);
  t.coeff = parse_num(tok.substr(star + 1), line);
  if (t.var < 0 || t.var >= var_count)
    throw ParseError(line, "variable index out of range in '" + tok + "'");
  return t;
}

}  // namespace

LayoutSpec parse_spec(const std::string& text) {
  LayoutSpec spec;
  bool have_vars = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::vector<std::string> toks = tokenize(raw);
    if (toks.empty()) continue;

    if (toks[0] == "vars") {
      if (have_vars) throw ParseError(lineno, "duplicate vars line");
      if (toks.size() != 2) throw ParseError(lineno, "expected 'vars <n>'");
      spec.var_count = parse_int(toks[1], lineno);
      if (spec.var_count < 1) throw ParseError(lineno, "vars must be >= 1");
      spec.var_names.assign(spec.var_count, "");
      have_vars = true;
    } else if (toks[0] == "name") {
      if (!have_vars) throw ParseError(lineno, "name before vars");
      if (toks.size() != 3) throw ParseError(lineno, "expected 'name <i> <label>'");
      int i = parse_int(toks[1], lineno);
      if (i < 0 || i >= spec.var_count)
        throw ParseError(lineno, "name index out of range");
      spec.var_names[i] = toks[2];
    } else if (toks[0] == "c") {
      if (!have_vars) throw ParseError(lineno, "constraint before vars");
      if (toks.size() < 4) throw ParseError(lineno, "truncated constraint");
      Constraint c;
      const std::string& pr = toks[1];
      if (pr == "H") {
        // hard
      } else if (pr.rfind("S:", 0) == 0) {
        double p = parse_num(pr.substr(2), lineno);
        if (p <= 0.0) throw ParseError(lineno, "penalty must be positive");
        c.penalty = p;
      } else {
        throw ParseError(lineno, "expected H or S:<penalty>, got '" + pr + "'");
      }
      const std::string& rel = toks[toks.size() - 2];
      if (rel == "EQ") c.rel = Relation::EQ;
      else if (rel == "LE") c.rel = Relation::LE;
      else if (rel == "GE") c.rel = Relation::GE;
      else throw ParseError(lineno, "unknown relation '" + rel + "'");
      c.rhs = parse_num(toks.back(), lineno);
      if (toks.size() == 4) throw ParseError(lineno, "constraint has no terms");
      std::vector<bool> seen(spec.var_count, false);
      for (size_t k = 2; k + 2 < toks.size(); ++k) {
        Term t = parse_term(toks[k], spec.var_count, lineno);
        if (seen[t.var])
          throw ParseError(lineno, "duplicate variable x" + std::to_string(t.var));
        seen[t.var] = true;
        c.terms.push_back(t);
      }
      spec.constraints.push_back(std::move(c));
    } else {
      throw ParseError(lineno, "unknown directive '" + toks[0] + "'");
    }
  }
  if (!have_vars) throw ParseError(lineno, "missing vars line");
  if (spec.constraints.empty()) throw ParseError(lineno, "spec has no constraints");
  return spec;
}

std::string serialize_spec(const LayoutSpec& spec) {
  std::string out = "vars " + std::to_string(spec.var_count) + "\n";
  for (int i = 0; i < spec.var_count; ++i)
    if (!spec.var_names[i].empty())
      out += "name " + std::to_string(i) + " " + spec.var_names[i] + "\n";
  for (const Constraint& c : spec.constraints) {
    out += "c ";
    out += c.hard() ? "H" : "S:" + format_double(*c.penalty);
    for (const Term& t : c.terms)
      out += " x" + std::to_string(t.var) + "*" + format_double(t.coeff);
    switch (c.rel) {
      case Relation::EQ: out += " EQ "; break;
      case Relation::LE: out += " LE "; break;
      case Relation::GE: out += " GE "; break;
    }
    out += format_double(c.rhs) + "\n";
  }
  return out;
}

}  // namespace tabsolve
