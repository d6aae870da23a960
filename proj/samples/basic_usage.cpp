// Builds WKP_(5,2), places the closed-form 1-PDS and prints its rounds.

#include <iostream>

#include "wkpyramid/wkpyramid.hpp"

int main() {
  const auto g = wkp::build_wkp(5, 2);
  const auto cert = wkp::construct(g, 1);

  std::cout << wkp::graph_name(g) << ": " << g.order() << " vertices, " << g.edge_count() << " edges\n";
  std::cout << cert.provenance << " set of size " << cert.set.size() << ":";
  for (auto v : cert.set) std::cout << ' ' << g.label(v);
  std::cout << "\n";
  for (std::size_t i = 0; i < cert.trace.rounds.size(); ++i)
    std::cout << "  P^" << i << ": " << cert.trace.rounds[i].size() << " monitored\n";
  std::cout << "radius " << *cert.radius << "\n";
}
