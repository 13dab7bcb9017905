#pragma once

// Reference computations kept apart from the library code paths.

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <vector>

namespace ref {

inline std::vector<uint64_t> sieve(uint64_t n) {
  std::vector<bool> comp(n + 1, false);
  std::vector<uint64_t> out;
  for (uint64_t i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (uint64_t j = i * i; j <= n; j += i) comp[j] = true;
  }
  return out;
}

// trial-division pi
inline uint64_t slow_pi(uint64_t n) {
  uint64_t c = 0;
  for (uint64_t k = 2; k <= n; ++k) {
    bool p = true;
    for (uint64_t d = 2; d * d <= k; ++d)
      if (k % d == 0) {
        p = false;
        break;
      }
    c += p;
  }
  return c;
}

// Gaussian ideals of norm n: elements of norm n up to the four units
inline uint64_t gaussian_ideals(uint64_t n) {
  uint64_t c = 0;
  for (long a = -100; a <= 100; ++a)
    for (long b = -100; b <= 100; ++b)
      if (static_cast<uint64_t>(a * a + b * b) == n) ++c;
  return c / 4;
}

inline uint64_t ordered_factorizations(int s, uint64_t n) {
  if (s == 1) return 1;
  uint64_t c = 0;
  for (uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) c += ordered_factorizations(s - 1, n / d);
  return c;
}

// Sylvester determinant by fraction-free elimination; rows are low-first coefficient lists
inline mpz_class sylvester_resultant(const std::vector<mpz_class>& f, const std::vector<mpz_class>& g) {
  int m = static_cast<int>(f.size()) - 1, n = static_cast<int>(g.size()) - 1, N = m + n;
  std::vector<std::vector<mpq_class>> A(N, std::vector<mpq_class>(N, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) A[i][i + k] = f[m - k];
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) A[n + i][i + k] = g[n - k];
  mpq_class det = 1;
  for (int c = 0; c < N; ++c) {
    int piv = -1;
    for (int r = c; r < N; ++r)
      if (A[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      std::swap(A[piv], A[c]);
      det = -det;
    }
    det *= A[c][c];
    for (int r = c + 1; r < N; ++r) {
      mpq_class t = A[r][c] / A[c][c];
      for (int k = c; k < N; ++k) A[r][k] -= t * A[c][k];
    }
  }
  return det.get_num();
}

// ζ(r) for integer r via MPFR, at high precision
inline double mpfr_zeta_ui(unsigned long r) {
  mpfr_t z;
  mpfr_init2(z, 256);
  mpfr_zeta_ui(z, r, MPFR_RNDN);
  double v = mpfr_get_d(z, MPFR_RNDN);
  mpfr_clear(z);
  return v;
}

}  // namespace ref
