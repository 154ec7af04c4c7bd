#pragma once

// Nearest point to (x0, y0) on the line pair {n1.u = c1, n2.u = c2} in R^2,
// solved by hand with Cramer's rule on the 2x2 KKT system
//   u = u0 - m1 n1 - m2 n2,  ni.u = ci.

#include <array>

namespace oracle {

struct Kkt2 {
  std::array<double, 2> point;
  std::array<double, 2> multipliers;
};

inline Kkt2 two_active_projection(std::array<double, 2> u0, std::array<double, 2> n1, double c1,
                                  std::array<double, 2> n2, double c2) {
  const double g11 = n1[0] * n1[0] + n1[1] * n1[1];
  const double g12 = n1[0] * n2[0] + n1[1] * n2[1];
  const double g22 = n2[0] * n2[0] + n2[1] * n2[1];
  const double r1 = n1[0] * u0[0] + n1[1] * u0[1] - c1;
  const double r2 = n2[0] * u0[0] + n2[1] * u0[1] - c2;
  const double det = g11 * g22 - g12 * g12;
  const double m1 = (r1 * g22 - g12 * r2) / det;
  const double m2 = (g11 * r2 - g12 * r1) / det;
  return {{u0[0] - m1 * n1[0] - m2 * n2[0], u0[1] - m1 * n1[1] - m2 * n2[1]}, {m1, m2}};
}

}  // namespace oracle
