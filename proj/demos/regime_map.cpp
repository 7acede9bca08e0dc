// Text map of the asymptotic regimes over (D, p).
#include <cstdio>

#include "rydberg/asymptotics.hpp"

int main() {
  using namespace rydberg;
  std::printf("c cosine, a airy, b bessel, A cosine-airy, B cosine-bessel\n\n     p:");
  for (int i = 1; i <= 40; ++i) std::printf("%s", i % 4 == 0 ? "|" : " ");
  std::printf("\n");
  for (int D = 2; D <= 12; ++D) {
    std::printf("D=%3d  ", D);
    for (int i = 1; i <= 40; ++i) {
      const RegimeClass r = classify_regime(D, 0.25 * i);
      const char* glyph = "cabAB";
      std::printf("%c", glyph[static_cast<int>(r.kind)]);
    }
    std::printf("   boundaries:");
    for (double b : regime_boundaries(D)) std::printf(" %.4g", b);
    std::printf("\n");
  }
}
