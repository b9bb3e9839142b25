#pragma once

#include <cstdint>
#include <span>

namespace muntz {

struct HarmonicIndex {
  int d = 2;
  int n = 0;
  int ell = 1;  // 1 <= ell <= harmonic_dim(n, d)

  void validate() const;
};

/// Number of linearly independent degree-n spherical harmonics in d dimensions.
std::int64_t harmonic_dim(int n, int d);

/// -n (n + d - 2).
double laplace_beltrami_eig(int n, int d);

/// Orthonormal real harmonic at a unit direction, d in {1, 2, 3}.
/// Ordering within a degree: d = 2 takes cos then sin; d = 3 enumerates
/// m = 0, 1c, 1s, ..., nc, ns without the Condon-Shortley phase.
double harmonic_eval(const HarmonicIndex& idx, std::span<const double> direction);

}  // namespace muntz
