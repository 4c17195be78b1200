#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace sdm {

// KL divergence between Bernoulli(p) and Bernoulli(q), with 0 ln 0 = 0.
// Written with log1p so that values close to the diagonal keep full relative
// precision.
inline double kl_bernoulli(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
    throw std::domain_error("kl_bernoulli: arguments must lie in [0,1]");
  }
  if (p == q) return 0.0;
  if (q == 0.0 || q == 1.0) {
    throw std::domain_error("kl_bernoulli: q=" + std::to_string(q) + " makes the divergence infinite");
  }
  double out = 0.0;
  if (p > 0.0) out += p * std::log1p((p - q) / q);
  if (p < 1.0) out += (1.0 - p) * std::log1p((q - p) / (1.0 - q));
  return out;
}

// Smallest KL divergence from Bernoulli(p) to a Bernoulli law with mean above
// x; equals kl(p, x) below x and 0 otherwise.
inline double d_inf_bernoulli(double p, double x) {
  if (!(x > 0.0 && x < 1.0)) throw std::domain_error("d_inf_bernoulli: x must lie in (0,1)");
  return p < x ? kl_bernoulli(p, x) : 0.0;
}

}  // namespace sdm
