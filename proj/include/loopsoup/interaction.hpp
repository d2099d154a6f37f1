#pragma once

#include "loopsoup/geometry.hpp"
#include "loopsoup/paths.hpp"
#include "loopsoup/types.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace loopsoup {

// Bounded, compactly supported pair potential v >= 0 together with a declared
// superstability constant C. C is declared, never derived: the library checks
// instances of the superstability inequality, it does not prove it. The
// built-in defaults (h/2 for the step, half the truncation floor for the
// Gaussian) are calibrated for ranges comparable to the lattice spacing;
// check_superstability is the ground truth per instance.
class PairPotential {
 public:
  using Evaluator = std::function<double(const Vec&)>;

  PairPotential(Evaluator v, double r_supp, double sup_norm, double superstability_c);

  double operator()(const Vec& displacement) const { return v_(displacement); }
  double r_supp() const { return r_supp_; }
  double sup_norm() const { return sup_norm_; }
  double superstability_c() const { return c_; }

 private:
  Evaluator v_;
  double r_supp_;
  double sup_norm_;
  double c_;
};

// v(x) = h 1{|x| <= r}.
PairPotential make_step_potential(double h, double r,
                                  std::optional<double> c = std::nullopt);

// v(x) = a exp(-|x|^2 / (2 sigma^2)) 1{|x| <= cut_radius}.
PairPotential make_gauss_potential(double a, double sigma, double cut_radius,
                                   std::optional<double> c = std::nullopt);

// Accepts "step:h=1.0,r=0.5" and "gauss:a=1.0,sigma=0.3,cut=3sigma" (cut may
// be "<mult>sigma" or an absolute radius). An optional trailing "c=<val>"
// overrides the declared superstability constant.
PairPotential parse_potential(const std::string& text);

struct EnergyBreakdown {
  double f_ll = 0.0;
  double f_ls = 0.0;
  double f_ss = 0.0;
  double total = 0.0;
};

enum class FAssembly {
  within_w,          // total = 1/2 f_ll + f_ls + 1/2 f_ss
  unit_box_vs_rest,  // seven-term assembly against the complement of box_w
};

// Time integral of v along two legs on their shared grid (composite
// trapezoid). When period is set, displacements are reduced to the nearest
// image coordinate-wise. Throws on mismatched beta/substeps/dimension.
double leg_interaction(const Leg& f, const Leg& g, const PairPotential& v,
                       std::optional<double> period = std::nullopt);

// Half the sum of leg_interaction over ordered leg pairs taken in both
// argument orders. For distinct loops every unordered pair appears twice, so
// the result is the plain double sum over legs(f_x) x legs(f_y); with
// same = true the diagonal leg pair is excluded and the half survives, which
// is the self-energy convention. Symmetric in its arguments.
double loop_pair_interaction(const Loop& f_x, const Loop& f_y, bool same,
                             const PairPotential& v,
                             std::optional<double> period = std::nullopt);

// Sum over ordered anchor pairs (x in box_a, y in box_b) of the halved
// leg-pair sums. Cell-list accelerated: legs are bucketed by start position
// at cell size (max leg spread + r_supp), so any interacting pair lies within
// Chebyshev distance 2 in cell coordinates. Falls back to the quadratic scan
// for periodic domains with fewer than five cells per side.
double total_interaction(const LoopConfiguration& config, const CenteredBox& box_a,
                         const CenteredBox& box_b, const PairPotential& v,
                         std::optional<double> period = std::nullopt);

// O(n^2) reference evaluation of the same sum.
double total_interaction_brute(const LoopConfiguration& config,
                               const CenteredBox& box_a, const CenteredBox& box_b,
                               const PairPotential& v,
                               std::optional<double> period = std::nullopt);

// The three interaction components between box_w and box_w2: loop-loop
// (anchors select membership), loop-shred (shred legs select by start point),
// shred-shred. With FAssembly::within_w, total assembles the interaction
// within box_w ( = box_w2); with unit_box_vs_rest, box_w2 is ignored and
// total counts every pair involving box_w exactly once, the complement taken
// literally as "not in box_w". Free-space metric.
EnergyBreakdown f_decomposition(const LoopConfiguration& loops,
                                const std::vector<Shred>& shreds,
                                const CenteredBox& box_w, const CenteredBox& box_w2,
                                const PairPotential& v,
                                FAssembly assembly = FAssembly::within_w);

// LHS - C (k^2/|W| - k) for the point configuration; nonnegative means the
// declared constant is honored by this instance.
double check_superstability(const PairPotential& v, const CenteredBox& box,
                            const std::vector<Vec>& points);

}  // namespace loopsoup
