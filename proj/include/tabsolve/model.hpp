#pragma once

#include "tabsolve/linalg.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tabsolve {

enum class Relation { EQ, LE, GE };

enum class SolveStatus { Optimal, Infeasible, IterationLimit, Unbounded };

const char* to_string(SolveStatus s);

// One linear layout constraint: sum_k coeff_k * x[var_k]  <rel>  rhs.
// Hard constraints have no penalty; soft ones carry a positive penalty.
struct Term {
  int var = 0;
  double coeff = 0.0;
};

struct Constraint {
  std::vector<Term> terms;
  Relation rel = Relation::EQ;
  double rhs = 0.0;
  std::optional<double> penalty;  // nullopt = hard

  bool hard() const { return !penalty.has_value(); }
};

struct LayoutSpec {
  int var_count = 0;
  std::vector<std::string> var_names;  // size var_count; empty string = unnamed
  std::vector<Constraint> constraints;
};

// Violation of c at x: |lhs - rhs| for EQ, max(0, lhs - rhs) for LE,
// max(0, rhs - lhs) for GE.
double residual(const Constraint& c, const Vector& x);

// Number of constraints whose residual is >= tol.
int count_suboptimal(const LayoutSpec& spec, const Vector& x, double tol);

struct Solution {
  Vector x;            // length var_count
  SolveStatus status = SolveStatus::Optimal;
  int iterations = 0;
  Vector errors;       // residual per constraint, in spec order
};

struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line(line) {}
  int line;
};

// Text format, one item per line, '#' starts a comment:
//   vars <n>
//   name <i> <label>                       (optional, label has no spaces)
//   c <H|S:<penalty>> <x<i>*<coeff>>... <EQ|LE|GE> <rhs>
// Example: c S:1 x2*1 EQ 120
LayoutSpec parse_spec(const std::string& text);

// Canonical serialization; parse_spec(serialize_spec(s)) == s field for
// field, and serialize_spec(parse_spec(t)) == t for canonical t. Numbers
// use shortest round-trip formatting.
std::string serialize_spec(const LayoutSpec& spec);

// Shortest decimal string that parses back to exactly d.
std::string format_double(double d);

}  // namespace tabsolve
