#include "loopsoup/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace loopsoup {

namespace {

Vec min_image(Vec dx, double period) {
  for (Eigen::Index i = 0; i < dx.size(); ++i) {
    dx[i] -= period * std::round(dx[i] / period);
  }
  return dx;
}

struct CellKey {
  std::vector<int32_t> idx;
  bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const {
    std::size_t h = 1469598103934665603ull;
    for (int32_t v : k.idx) {
      h ^= static_cast<std::size_t>(static_cast<uint32_t>(v));
      h *= 1099511628211ull;
    }
    return h;
  }
};

int32_t wrap_mod(int32_t a, int32_t n) {
  const int32_t r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

PairPotential::PairPotential(Evaluator v, double r_supp, double sup_norm,
                             double superstability_c)
    : v_(std::move(v)), r_supp_(r_supp), sup_norm_(sup_norm), c_(superstability_c) {
  if (!v_) throw std::invalid_argument("PairPotential: empty evaluator");
  if (r_supp_ < 0.0) throw std::invalid_argument("PairPotential: negative support");
  if (sup_norm_ < 0.0) throw std::invalid_argument("PairPotential: negative bound");
}

PairPotential make_step_potential(double h, double r, std::optional<double> c) {
  if (h < 0.0 || r < 0.0) throw std::invalid_argument("step potential: h, r must be >= 0");
  auto v = [h, r](const Vec& dx) { return dx.norm() <= r ? h : 0.0; };
  return PairPotential(v, r, h, c.value_or(0.5 * h));
}

PairPotential make_gauss_potential(double a, double sigma, double cut_radius,
                                   std::optional<double> c) {
  if (a < 0.0 || sigma <= 0.0 || cut_radius < 0.0) {
    throw std::invalid_argument("gauss potential: need a >= 0, sigma > 0, cut >= 0");
  }
  const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
  auto v = [a, cut_radius, inv2s2](const Vec& dx) {
    const double n2 = dx.squaredNorm();
    if (n2 > cut_radius * cut_radius) return 0.0;
    return a * std::exp(-n2 * inv2s2);
  };
  const double floor_height = a * std::exp(-cut_radius * cut_radius * inv2s2);
  return PairPotential(v, cut_radius, a, c.value_or(0.5 * floor_height));
}

PairPotential parse_potential(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("potential spec: expected '<name>:<params>', got '" + text + "'");
  }
  const std::string name = text.substr(0, colon);
  std::unordered_map<std::string, std::string> kv;
  std::string rest = text.substr(colon + 1);
  std::size_t pos = 0;
  while (pos < rest.size()) {
    auto comma = rest.find(',', pos);
    if (comma == std::string::npos) comma = rest.size();
    const std::string item = rest.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("potential spec: expected key=value, got '" + item + "'");
    }
    kv[item.substr(0, eq)] = item.substr(eq + 1);
    pos = comma + 1;
  }
  auto need = [&](const std::string& key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end()) {
      throw std::invalid_argument("potential spec: missing parameter '" + key + "'");
    }
    return it->second;
  };
  std::optional<double> c;
  if (auto it = kv.find("c"); it != kv.end()) c = std::stod(it->second);

  if (name == "step") {
    return make_step_potential(std::stod(need("h")), std::stod(need("r")), c);
  }
  if (name == "gauss") {
    const double a = std::stod(need("a"));
    const double sigma = std::stod(need("sigma"));
    std::string cut = kv.count("cut") ? kv["cut"] : "3sigma";
    double cut_radius;
    if (cut.size() > 5 && cut.substr(cut.size() - 5) == "sigma") {
      cut_radius = std::stod(cut.substr(0, cut.size() - 5)) * sigma;
    } else {
      cut_radius = std::stod(cut);
    }
    return make_gauss_potential(a, sigma, cut_radius, c);
  }
  throw std::invalid_argument("potential spec: unknown kind '" + name + "'");
}

double leg_interaction(const Leg& f, const Leg& g, const PairPotential& v,
                       std::optional<double> period) {
  if (f.beta != g.beta || f.substeps() != g.substeps() || f.dim() != g.dim()) {
    throw std::invalid_argument("leg_interaction: mismatched discretization");
  }
  const int n = f.substeps();
  const double dt = f.beta / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    Vec dx = f.points.col(i) - g.points.col(i);
    if (period) dx = min_image(std::move(dx), *period);
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    sum += w * v(dx);
  }
  return sum * dt;
}

// Halved sum over ordered leg pairs in both directions: for distinct loops
// every unordered leg pair appears twice, so this equals the plain single
// direction double sum; for same = true the diagonal is excluded and the
// half remains, giving the self-energy convention.
double loop_pair_interaction(const Loop& f_x, const Loop& f_y, bool same,
                             const PairPotential& v, std::optional<double> period) {
  double sum = 0.0;
  for (std::size_t i = 0; i < f_x.legs.size(); ++i) {
    for (std::size_t j = 0; j < f_y.legs.size(); ++j) {
      if (same && i == j) continue;
      sum += leg_interaction(f_x.legs[i], f_y.legs[j], v, period);
    }
  }
  return same ? 0.5 * sum : sum;
}

double total_interaction_brute(const LoopConfiguration& config,
                               const CenteredBox& box_a, const CenteredBox& box_b,
                               const PairPotential& v, std::optional<double> period) {
  double sum = 0.0;
  for (std::size_t x = 0; x < config.loops.size(); ++x) {
    if (!box_a.contains(config.loops[x].anchor)) continue;
    for (std::size_t y = 0; y < config.loops.size(); ++y) {
      if (!box_b.contains(config.loops[y].anchor)) continue;
      const double w = (x == y) ? 1.0 : 0.5;
      sum += w * loop_pair_interaction(config.loops[x], config.loops[y], x == y, v, period);
    }
  }
  return sum;
}

double total_interaction(const LoopConfiguration& config, const CenteredBox& box_a,
                         const CenteredBox& box_b, const PairPotential& v,
                         std::optional<double> period) {
  if (config.loops.empty() || v.sup_norm() == 0.0) return 0.0;

  const double cell = max_leg_spread(config) + v.r_supp();
  if (cell <= 0.0) return 0.0;  // zero-range potential and point legs

  int32_t cells_per_side = 0;  // 0 = non-periodic indexing
  double cell_size = cell;
  if (period) {
    cells_per_side = static_cast<int32_t>(std::floor(*period / cell));
    if (cells_per_side < 5) {
      return total_interaction_brute(config, box_a, box_b, v, period);
    }
    cell_size = *period / cells_per_side;
  }

  struct LegRef {
    std::size_t loop;
    std::size_t leg;
  };
  std::vector<LegRef> refs;
  std::vector<char> in_a(config.loops.size()), in_b(config.loops.size());
  for (std::size_t x = 0; x < config.loops.size(); ++x) {
    in_a[x] = box_a.contains(config.loops[x].anchor);
    in_b[x] = box_b.contains(config.loops[x].anchor);
    for (std::size_t i = 0; i < config.loops[x].legs.size(); ++i) {
      refs.push_back({x, i});
    }
  }

  const int d = config.loops.front().legs.front().dim();
  auto cell_of = [&](const Vec& p) {
    CellKey key;
    key.idx.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      auto c = static_cast<int32_t>(std::floor(p[i] / cell_size));
      if (cells_per_side > 0) c = wrap_mod(c, cells_per_side);
      key.idx[static_cast<std::size_t>(i)] = c;
    }
    return key;
  };

  std::unordered_map<CellKey, std::vector<std::size_t>, CellKeyHash> buckets;
  for (std::size_t r = 0; r < refs.size(); ++r) {
    const auto& leg = config.loops[refs[r].loop].legs[refs[r].leg];
    buckets[cell_of(leg.start())].push_back(r);
  }

  double sum = 0.0;
  std::vector<int32_t> offset(static_cast<std::size_t>(d), -2);
  for (const auto& [key, members] : buckets) {
    // Enumerate all cells within Chebyshev distance 2 of key.
    std::fill(offset.begin(), offset.end(), -2);
    while (true) {
      CellKey nb = key;
      for (int i = 0; i < d; ++i) {
        auto c = nb.idx[static_cast<std::size_t>(i)] + offset[static_cast<std::size_t>(i)];
        if (cells_per_side > 0) c = wrap_mod(c, cells_per_side);
        nb.idx[static_cast<std::size_t>(i)] = c;
      }
      if (auto it = buckets.find(nb); it != buckets.end()) {
        for (std::size_t u : members) {
          for (std::size_t w : it->second) {
            if (w <= u) continue;  // each unordered leg pair once
            const auto [xu, iu] = refs[u];
            const auto [xw, iw] = refs[w];
            const bool ab = in_a[xu] && in_b[xw];
            const bool ba = in_a[xw] && in_b[xu];
            if (!ab && !ba) continue;
            const double val = leg_interaction(config.loops[xu].legs[iu],
                                               config.loops[xw].legs[iw], v, period);
            if (val == 0.0) continue;
            if (ab) sum += 0.5 * val;
            if (ba) sum += 0.5 * val;
          }
        }
      }
      int i = 0;
      for (; i < d; ++i) {
        auto& o = offset[static_cast<std::size_t>(i)];
        if (++o <= 2) break;
        o = -2;
      }
      if (i == d) break;
    }
  }
  return sum;
}

namespace {

double shred_leg_interaction(const Leg& a, const Leg& b, const PairPotential& v) {
  return leg_interaction(a, b, v);
}

}  // namespace

EnergyBreakdown f_decomposition(const LoopConfiguration& loops,
                                const std::vector<Shred>& shreds,
                                const CenteredBox& box_w, const CenteredBox& box_w2,
                                const PairPotential& v, FAssembly assembly) {
  struct SLeg {
    const Leg* leg;
    std::size_t shred;
    bool in_w;
    bool in_w2;
  };
  const bool vs_rest = assembly == FAssembly::unit_box_vs_rest;

  std::vector<SLeg> slegs;
  for (std::size_t s = 0; s < shreds.size(); ++s) {
    for (const auto& leg : shreds[s].legs) {
      const bool in_w = box_w.contains(leg.start());
      const bool in_w2 = vs_rest ? !in_w : box_w2.contains(leg.start());
      slegs.push_back({&leg, s, in_w, in_w2});
    }
  }
  std::vector<char> loop_w(loops.loops.size()), loop_w2(loops.loops.size());
  for (std::size_t x = 0; x < loops.loops.size(); ++x) {
    loop_w[x] = box_w.contains(loops.loops[x].anchor);
    loop_w2[x] = vs_rest ? !loop_w[x] : box_w2.contains(loops.loops[x].anchor);
  }

  // Component sums F^{..}_{A,B} for (A,B) = (W,W2) and, for the seven-term
  // assembly, also the within-W and reversed pieces.
  double ll_ww2 = 0.0, ll_ww = 0.0;
  double ls_ww2 = 0.0, ls_ww = 0.0, ls_w2w = 0.0;
  double ss_ww2 = 0.0, ss_ww = 0.0;

  for (std::size_t x = 0; x < loops.loops.size(); ++x) {
    for (std::size_t y = 0; y < loops.loops.size(); ++y) {
      double pair = 0.0;
      const auto& fx = loops.loops[x];
      const auto& fy = loops.loops[y];
      if ((loop_w[x] && loop_w2[y]) || (vs_rest && loop_w[x] && loop_w[y])) {
        for (std::size_t i = 0; i < fx.legs.size(); ++i) {
          for (std::size_t j = 0; j < fy.legs.size(); ++j) {
            if (x == y && i == j) continue;
            pair += leg_interaction(fx.legs[i], fy.legs[j], v);
          }
        }
      }
      if (loop_w[x] && loop_w2[y]) ll_ww2 += pair;
      if (vs_rest && loop_w[x] && loop_w[y]) ll_ww += pair;
    }
  }
  for (std::size_t x = 0; x < loops.loops.size(); ++x) {
    const auto& fx = loops.loops[x];
    for (const auto& sl : slegs) {
      double pair = 0.0;
      if ((loop_w[x] && sl.in_w2) ||
          (vs_rest && ((loop_w2[x] && sl.in_w) || (loop_w[x] && sl.in_w)))) {
        for (const auto& leg : fx.legs) pair += shred_leg_interaction(leg, *sl.leg, v);
      }
      if (loop_w[x] && sl.in_w2) ls_ww2 += pair;
      if (vs_rest) {
        if (loop_w2[x] && sl.in_w) ls_w2w += pair;
        if (loop_w[x] && sl.in_w) ls_ww += pair;
      }
    }
  }
  for (std::size_t a = 0; a < slegs.size(); ++a) {
    for (std::size_t b = 0; b < slegs.size(); ++b) {
      if (a == b) continue;
      double pair = 0.0;
      if ((slegs[a].in_w && slegs[b].in_w2) ||
          (vs_rest && slegs[a].in_w && slegs[b].in_w)) {
        pair = shred_leg_interaction(*slegs[a].leg, *slegs[b].leg, v);
      }
      if (slegs[a].in_w && slegs[b].in_w2) ss_ww2 += pair;
      if (vs_rest && slegs[a].in_w && slegs[b].in_w) ss_ww += pair;
    }
  }

  EnergyBreakdown out;
  if (!vs_rest) {
    out.f_ll = ll_ww2;
    out.f_ls = ls_ww2;
    out.f_ss = ss_ww2;
    out.total = 0.5 * out.f_ll + out.f_ls + 0.5 * out.f_ss;
  } else {
    out.f_ll = 0.5 * ll_ww + ll_ww2;
    out.f_ls = ls_ww + ls_ww2 + ls_w2w;
    out.f_ss = 0.5 * ss_ww + ss_ww2;
    out.total = out.f_ll + out.f_ls + out.f_ss;
  }
  return out;
}

double check_superstability(const PairPotential& v, const CenteredBox& box,
                            const std::vector<Vec>& points) {
  const auto k = static_cast<double>(points.size());
  double lhs = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      lhs += v(points[i] - points[j]);
    }
  }
  const double rhs = v.superstability_c() * (k * k / box.volume() - k);
  return lhs - rhs;
}

}  // namespace loopsoup
