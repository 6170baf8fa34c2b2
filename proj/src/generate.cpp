#include <cmath>

#include "w3sat/harness.hpp"
#include "w3sat/rng.hpp"

namespace w3sat {

Instance gen_random(const GenConfig& cfg) {
  if (cfg.n_vars < 3) throw Error(Errc::BadConfig, "random 3-SAT needs at least 3 variables, got " + std::to_string(cfg.n_vars));
  Rng rng(cfg.seed);
  Instance inst;
  inst.n_vars = cfg.n_vars;
  inst.clauses.reserve(cfg.n_clauses);
  for (std::size_t i = 0; i < cfg.n_clauses; ++i) {
    Literal lits[3];
    for (std::size_t j = 0; j < 3; ++j) {
      Var v;
      bool repeated;
      do {
        v = static_cast<Var>(uniform_below(rng, cfg.n_vars)) + 1;
        repeated = false;
        for (std::size_t p = 0; p < j; ++p) repeated |= lits[p].var() == v;
      } while (repeated);
      lits[j] = Literal(v, coin(rng));
    }
    inst.clauses.push_back(make_clause(std::span<const Literal>(lits, 3)));
  }
  return inst;
}

std::size_t clauses_for_density(Var n, double density) {
  if (!(density >= 0.0) || !std::isfinite(density)) throw Error(Errc::BadConfig, "density must be a nonnegative number");
  return static_cast<std::size_t>(std::llround(density * static_cast<double>(n)));
}

std::vector<GenConfig> sweep_configs(Var n_lo, Var n_hi, std::span<const double> densities, std::size_t count,
                                     std::uint64_t seed_start) {
  if (n_lo < 3 || n_hi < n_lo) throw Error(Errc::BadConfig, "need 3 <= n_lo <= n_hi");
  if (densities.empty()) throw Error(Errc::BadConfig, "at least one density is required");
  const std::size_t span = n_hi - n_lo + 1;
  std::vector<GenConfig> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Var n = n_lo + static_cast<Var>(i % span);
    const double density = densities[(i / span) % densities.size()];
    out.push_back({n, clauses_for_density(n, density), seed_start + i});
  }
  return out;
}

}  // namespace w3sat
