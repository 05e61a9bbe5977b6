#pragma once

// Shared test instances.  The two C4 fixtures put vertices 1-2-3-4 on a
// preference ring; RING ranks both diagonals last (the half-mass ring point
// is feasible there), CHORD promotes each diagonal to second place at its
// endpoints (the same point then violates an odd dangerous-walk row).

#include <string>

#include "ssr/instance.hpp"
#include "ssr/lp.hpp"

namespace fixtures {

inline const std::string I2 = "1: 2\n2: 1\n";

inline const std::string I4_NONE = "1: 2 3 4\n2: 3 1 4\n3: 1 2 4\n4: 1 2 3\n";

inline const std::string I4_TIES =
    "1: (2 3 4)\n2: (1 3 4)\n3: (1 2 4)\n4: (1 2 3)\n";

inline const std::string I4_GOOD = "1: 2 3 4\n2: 1 3 4\n3: 4 1 2\n4: 3 1 2\n";

inline const std::string C4_RING = "1: 2 4 3\n2: 3 1 4\n3: 4 2 1\n4: 1 3 2\n";

inline const std::string C4_CHORD = "1: 2 3 4\n2: 3 1 4\n3: 4 1 2\n4: 1 3 2\n";

/** Mass 1/2 on each ring edge {1,2},{2,3},{3,4},{1,4}; diagonals zero. */
inline ssr::RationalVector ring_half_point() {
  ssr::RationalVector x(4);
  const ssr::Rat half(1, 2);
  x[ssr::Edge(0, 1)] = half;
  x[ssr::Edge(1, 2)] = half;
  x[ssr::Edge(2, 3)] = half;
  x[ssr::Edge(0, 3)] = half;
  return x;
}

}  // namespace fixtures
