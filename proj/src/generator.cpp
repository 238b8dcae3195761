#include "tabsolve/generator.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace tabsolve {

namespace {

// splitmix64: decorrelates the per-spec seeds derived from (suite seed,
// size, index) so neighbouring specs do not share stream prefixes.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Constraint hard_eq(std::vector<Term> terms, double rhs) {
  Constraint c;
  c.terms = std::move(terms);
  c.rel = Relation::EQ;
  c.rhs = rhs;
  return c;
}

Constraint soft_eq(std::vector<Term> terms, double rhs) {
  Constraint c = hard_eq(std::move(terms), rhs);
  c.penalty = 1.0;
  return c;
}

}  // namespace

Xorshift64::Xorshift64(std::uint64_t seed)
    : state_(seed ? seed : 0x9E3779B97F4A7C15ULL) {}

std::uint64_t Xorshift64::next() {
  std::uint64_t x = state_;
  x ^= x >> 12;
  x ^= x << 25;
  x ^= x >> 27;
  state_ = x;
  return x * 2685821657736338717ULL;
}

std::uint64_t Xorshift64::below(std::uint64_t bound) {
  return next() % bound;
}

LayoutSpec generate_layout(int widgets, std::uint64_t seed, double window_w,
                           double window_h) {
  if (widgets < 1) throw std::invalid_argument("generate_layout: widgets < 1");
  Xorshift64 rng(seed);

  LayoutSpec spec;
  spec.var_count = 4 * widgets;
  spec.var_names.assign(spec.var_count, "");
  spec.constraints.reserve(4 * widgets);

  // Tab stops usable as anchors; -1 stands for the window origin (x=0/y=0).
  std::vector<int> x_tabs = {-1, 0};  // origin, win_w
  std::vector<int> y_tabs = {-1, 1};  // origin, win_h

  auto size_px = [&rng] { return 20.0 + static_cast<double>(rng.below(181)); };

  // Widget 1: its left/top are the window origin; its 2 positioning rows pin
  // the window edges instead.
  spec.constraints.push_back(hard_eq({{0, 1.0}}, window_w));
  spec.constraints.push_back(hard_eq({{1, 1.0}}, window_h));
  spec.constraints.push_back(soft_eq({{2, 1.0}}, size_px()));
  spec.constraints.push_back(soft_eq({{3, 1.0}}, size_px()));
  x_tabs.push_back(2);
  y_tabs.push_back(3);

  for (int w = 1; w < widgets; ++w) {
    const int l = 4 * w, t = 4 * w + 1, r = 4 * w + 2, b = 4 * w + 3;

    const int ax = x_tabs[rng.below(x_tabs.size())];
    const double gx = static_cast<double>(rng.below(41));
    if (ax < 0)
      spec.constraints.push_back(hard_eq({{l, 1.0}}, gx));
    else
      spec.constraints.push_back(hard_eq({{l, 1.0}, {ax, -1.0}}, gx));

    const int ay = y_tabs[rng.below(y_tabs.size())];
    const double gy = static_cast<double>(rng.below(41));
    if (ay < 0)
      spec.constraints.push_back(hard_eq({{t, 1.0}}, gy));
    else
      spec.constraints.push_back(hard_eq({{t, 1.0}, {ay, -1.0}}, gy));

    spec.constraints.push_back(soft_eq({{r, 1.0}, {l, -1.0}}, size_px()));
    spec.constraints.push_back(soft_eq({{b, 1.0}, {t, -1.0}}, size_px()));

    x_tabs.push_back(l);
    x_tabs.push_back(r);
    y_tabs.push_back(t);
    y_tabs.push_back(b);
  }
  return spec;
}

std::vector<GeneratedSpec> generate_suite(const GenConfig& cfg) {
  if (cfg.min_size < 4 || cfg.step < 4 || cfg.step % 4 != 0 ||
      cfg.min_size % 4 != 0 || cfg.per_size < 1 || cfg.max_size < cfg.min_size)
    throw std::invalid_argument("generate_suite: invalid config");

  std::vector<GeneratedSpec> suite;
  for (int size = cfg.min_size; size <= cfg.max_size; size += cfg.step) {
    for (int i = 0; i < cfg.per_size; ++i) {
      GeneratedSpec g;
      g.constraints = size;
      g.index = i;
      g.seed = splitmix64(cfg.seed ^ splitmix64(
                              static_cast<std::uint64_t>(size) * 1000003ULL +
                              static_cast<std::uint64_t>(i)));
      g.spec = generate_layout(size / 4, g.seed, cfg.window_w, cfg.window_h);
      suite.push_back(std::move(g));
    }
  }
  return suite;
}

std::vector<std::string> write_suite(const std::vector<GeneratedSpec>& suite,
                                     const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> paths;
  paths.reserve(suite.size());
  for (const auto& g : suite) {
    const auto path = std::filesystem::path(dir) /
                      ("layout_c" + std::to_string(g.constraints) + "_i" +
                       std::to_string(g.index) + ".spec");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << serialize_spec(g.spec);
    paths.push_back(path.string());
  }
  return paths;
}

}  // namespace tabsolve
