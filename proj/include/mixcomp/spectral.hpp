#pragma once
// Spectra of reversible kernels via the symmetrized form
// S = D^{1/2} K D^{-1/2}, D = diag(pi). Birth-and-death kernels keep S
// tridiagonal and use the dedicated symmetric tridiagonal eigensolver.

#include "mixcomp/core.hpp"

namespace mixcomp::spectral {

struct Spectrum {
  Vec eigenvalues;  // non-increasing; leads with 1 for a stochastic kernel
};

inline Spectrum spectrum_reversible(const Kernel& k, const Pmf& pi) {
  const int n = k.size();
  if (pi.size() != n) throw validation_error("spectrum: pmf length mismatch");
  if (!pi.strictly_positive()) throw validation_error("spectrum: pi must be strictly positive");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(pi(i) * k(i, j) - pi(j) * k(j, i)) > tol::kReversible)
        throw validation_error("spectrum: kernel is not reversible at (" + std::to_string(i) + "," +
                               std::to_string(j) + ")");

  Eigen::SelfAdjointEigenSolver<Mat> solver;
  if (detail::is_tridiagonal(k.rows())) {
    Vec diag = k.rows().diagonal();
    Vec sub(n - 1 > 0 ? n - 1 : 0);
    for (int i = 0; i + 1 < n; ++i) sub[i] = std::sqrt(std::max(0.0, k(i, i + 1) * k(i + 1, i)));
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  } else {
    Mat s(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s(i, j) = std::sqrt(pi(i) / pi(j)) * k(i, j);
    Mat sym = 0.5 * (s + s.transpose());
    solver.compute(sym, Eigen::EigenvaluesOnly);
  }
  if (solver.info() != Eigen::Success) throw numeric_error("spectrum: eigensolver failed to converge");
  Vec ev = solver.eigenvalues();  // ascending
  return Spectrum{ev.reverse()};
}

// Second-largest eigenvalue modulus. The unit eigenvalue must be simple and
// -1 must not be in the spectrum (within tol::kErgodic), otherwise the kernel
// is reducible respectively periodic.
inline double slem(const Kernel& k, const Pmf& pi) {
  const Spectrum sp = spectrum_reversible(k, pi);
  const Vec& ev = sp.eigenvalues;
  const int n = static_cast<int>(ev.size());
  if (n == 1) return 0.0;
  if (std::abs(ev[0] - 1.0) > tol::kErgodic)
    throw numeric_error("slem: leading eigenvalue is not 1");
  if (ev[1] >= 1.0 - tol::kErgodic)
    throw validation_error("slem: unit eigenvalue has multiplicity > 1 (kernel is reducible)");
  if (ev[n - 1] <= -1.0 + tol::kErgodic)
    throw validation_error("slem: eigenvalue -1 present (kernel is periodic)");
  return std::max(std::abs(ev[1]), std::abs(ev[n - 1]));
}

inline double relaxation_time(const Kernel& k, const Pmf& pi) { return 1.0 / (1.0 - slem(k, pi)); }

}  // namespace mixcomp::spectral
