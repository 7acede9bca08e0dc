// Renyi, Tsallis and Shannon entropies of ground-state hydrogen against the
// closed forms R_p = ln pi + 3 ln p/(p-1) and S = ln pi + 3.
#include <cmath>
#include <cstdio>
#include <numbers>

#include "rydberg/rydberg.hpp"

int main() {
  using namespace rydberg;
  const QuantumState s = make_state(3, 1.0, 1, 0);
  std::printf("%6s %20s %20s %20s\n", "p", "R_p", "closed form", "T_p");
  for (double p : {0.5, 2.0, 3.0, 5.0}) {
    const EntropyReport r = renyi_total(s, p);
    const double ref = std::log(std::numbers::pi) + 3.0 * std::log(p) / (p - 1.0);
    std::printf("%6.2f %20.15f %20.15f %20.15f\n", p, r.R_p, ref, r.T_p);
  }
  const EntropyReport sh = shannon_total(s);
  std::printf("Shannon %.15f (ln pi + 3 = %.15f)\n", *sh.S, std::log(std::numbers::pi) + 3.0);
  std::printf("disequilibrium W_2 = %.15f (1/(8 pi) = %.15f)\n", *renyi_total(s, 2.0).disequilibrium,
              1.0 / (8.0 * std::numbers::pi));
}
