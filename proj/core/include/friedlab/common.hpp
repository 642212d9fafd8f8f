#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace friedlab {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

// Numerical bands. Everything that decides "is this zero / real / the same
// point" goes through one of these.
namespace tol {
inline constexpr double cluster = 1e-8;        // scaled by (1+|z|)
inline constexpr double real_band = 1e-9;      // |Im z| below this is REAL
inline constexpr double root_step = 1e-13;     // Aberth stop, scaled by (1+|z|)
inline constexpr double root_residual = 1e-10; // accepted |p(r)| relative bound
inline constexpr double im_lambda = 1e-12;     // spectral parameter must be off R
inline constexpr double m_finite = 1e-12;      // bracket of M, scaled by (1+|B|)
inline constexpr double d_zero = 1e-12;
inline constexpr double quad_abs = 1e-9;
inline constexpr int max_degree = 64;
}  // namespace tol

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// bad input: real pole, not L2, degree too high, ...
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : Error(what + " (achieved " + std::to_string(achieved) + ")"), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

// lambda hit a zero of D or an eigenvalue of A_B
class SpectralError : public Error {
 public:
  enum class Kind { d_zero, eigenvalue };
  SpectralError(Kind k, const std::string& what) : Error(what), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class InsufficientInformation : public Error {
 public:
  using Error::Error;
};

class PathologicalModel : public Error {
 public:
  using Error::Error;
};

inline bool same_point(cplx a, cplx b) {
  return std::abs(a - b) <= tol::cluster * (1.0 + std::max(std::abs(a), std::abs(b)));
}

inline int half_plane_sign(cplx z) {
  if (std::abs(z.imag()) < tol::real_band) return 0;
  return z.imag() > 0 ? 1 : -1;
}

// sign(Im lambda) for a spectral parameter; throws on the real axis
inline int spectral_sign(cplx lambda) {
  if (std::abs(lambda.imag()) < tol::im_lambda)
    throw DomainError("spectral parameter on the real axis");
  return lambda.imag() > 0 ? 1 : -1;
}

}  // namespace friedlab
