#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tabsolve/model.hpp"

namespace tabsolve {

// xorshift64* generator; identical streams across platforms.
//   x ^= x >> 12; x ^= x << 25; x ^= x >> 27; return x * 2685821657736338717.
// A zero seed is replaced by 0x9E3779B97F4A7C15 so the state never sticks.
class Xorshift64 {
 public:
  explicit Xorshift64(std::uint64_t seed);
  std::uint64_t next();
  // Uniform integer in [0, bound) via modulo; bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

struct GenConfig {
  int min_size = 4;     // constraints in the smallest spec
  int max_size = 2400;  // constraints in the largest spec
  int step = 4;         // size increment (4 constraints per widget)
  int per_size = 10;    // specs generated per size
  std::uint64_t seed = 42;
  double window_w = 1024;
  double window_h = 768;
};

// One random layout of `widgets` widgets (4 constraints each, so 4*widgets
// total).  Variables are x/y tab stops; widget 1 pins the window edges with
// 2 hard rows, every later widget chains its left/top tabs to previously
// placed tabs with 2 hard rows, and each widget adds 2 soft preferred-size
// rows (sizes uniform in [20,200] px, penalty 1).  The hard subsystem is
// triangular -- each new tab sits a fixed offset from an already-determined
// tab -- so it is always feasible.  Deterministic in (widgets, seed).
LayoutSpec generate_layout(int widgets, std::uint64_t seed,
                           double window_w = 1024, double window_h = 768);

struct GeneratedSpec {
  LayoutSpec spec;
  int constraints = 0;
  int index = 0;  // per-size occurrence counter, 0-based
  std::uint64_t seed = 0;
};

// Full benchmark suite: per_size specs at every size in
// {min_size, min_size+step, ..., max_size}, each with a distinct seed
// derived from cfg.seed; deterministic across runs and platforms.
std::vector<GeneratedSpec> generate_suite(const GenConfig& cfg);

// Serializes each spec to dir/layout_c{constraints}_i{index}.spec and
// returns the paths written.
std::vector<std::string> write_suite(const std::vector<GeneratedSpec>& suite,
                                     const std::string& dir);

}  // namespace tabsolve
