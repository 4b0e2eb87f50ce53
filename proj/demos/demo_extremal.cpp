// Side-by-side look at the extremal machinery: exact maxima for small N,
// then the two constructions at sizes the exact search cannot reach.

#include <cstdio>

#include "ap3/extremal.hpp"

using namespace ap3;

int main() {
  std::printf("exact r3 over [1, 30]:\n  N : value, least witness\n");
  for (const auto& rec : exact_r3_table(30)) {
    std::printf("%4lld : %2lld, {", static_cast<long long>(rec.n),
                static_cast<long long>(rec.value));
    bool first = true;
    for (const auto a : rec.witness.elements()) {
      std::printf("%s%lld", first ? "" : ",", static_cast<long long>(a));
      first = false;
    }
    std::printf("}\n");
  }

  std::printf("\nconstructions beyond the exact range:\n");
  std::printf("%8s %10s %10s\n", "N", "greedy", "sphere");
  for (const std::int64_t n : {100, 500, 1000, 5000, 20000}) {
    std::printf("%8lld %10lld %10lld\n", static_cast<long long>(n),
                static_cast<long long>(greedy_3ap_free(n).size()),
                static_cast<long long>(behrend_set(n).size()));
  }
  return 0;
}
