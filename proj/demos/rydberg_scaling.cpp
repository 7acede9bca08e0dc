// Exact Laguerre norms of Rydberg states next to the leading n -> infinity term.
#include <cstdio>
#include <initializer_list>

#include "rydberg/rydberg.hpp"

int main() {
  using namespace rydberg;
  struct Case { int D; double p; };
  for (Case c : {Case{3, 1.5}, Case{3, 3.0}, Case{2, 3.0}, Case{4, 3.0}}) {
    const AsymptoticEstimate est = asymptotic_norm(make_state(c.D, 1.0, 10, 0), c.p);
    std::printf("D=%d p=%g  regime %s  N ~ %.6g n_r^%.6g\n", c.D, c.p, to_string(est.regime.kind), est.coefficient,
                est.n_exponent);
    for (int n : {25, 50, 100, 200}) {
      const QuantumState s = make_state(c.D, 1.0, n, 0);
      const IntegrationResult N = hydrogenic_norm(s, c.p);
      std::printf("  n=%4d  exact %.12e  leading %.12e  ratio %.6f\n", n, N.value, est.value(s.n_r()),
                  N.value / est.value(s.n_r()));
    }
  }
}
