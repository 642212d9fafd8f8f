#pragma once

#include <random>
#include <vector>

#include "friedlab/model.hpp"

namespace testing_support {

using friedlab::cplx;
using friedlab::RatFun;

// Poles at distance >= min_dist from R, numerator degree < pole count.
inline RatFun random_ratfun(std::mt19937_64& rng, int npoles, double min_dist = 0.1,
                            int half = 0, int gap = 1) {
  std::uniform_real_distribution<double> re(-2.0, 2.0), im(min_dist, 2.0), co(-1.0, 1.0);
  std::uniform_int_distribution<int> sgn(0, 1);
  std::vector<friedlab::Pole> poles;
  for (int k = 0; k < npoles; ++k) {
    int s = half != 0 ? half : (sgn(rng) ? 1 : -1);
    cplx z(re(rng), s * im(rng));
    poles.push_back({z, 1, friedlab::classify(z)});
  }
  std::vector<cplx> c;
  for (int k = 0; k <= npoles - gap; ++k) c.emplace_back(co(rng), co(rng));
  return RatFun(friedlab::Poly(c), poles);
}

inline cplx random_offaxis(std::mt19937_64& rng, double min_im = 0.2) {
  std::uniform_real_distribution<double> re(-2.0, 2.0), im(min_im, 2.0);
  std::uniform_int_distribution<int> sgn(0, 1);
  return {re(rng), (sgn(rng) ? 1 : -1) * im(rng)};
}

}  // namespace testing_support
