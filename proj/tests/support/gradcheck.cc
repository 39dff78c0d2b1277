// tests/support/gradcheck.cc

// Copyright 2026  The scesep authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "support/gradcheck.h"

#include <cmath>

namespace scesep {
namespace testsupport {

std::vector<double> numerical_gradient(
    const std::function<double(const std::vector<double> &)> &f,
    const std::vector<double> &x, double step) {
  std::vector<double> grad(x.size());
  std::vector<double> probe = x;
  for (size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + step;
    const double up = f(probe);
    probe[i] = x[i] - step;
    const double down = f(probe);
    probe[i] = x[i];
    grad[i] = (up - down) / (2.0 * step);
  }
  return grad;
}

double gradient_rel_err(const std::vector<double> &reference,
                        const std::vector<double> &got, double floor) {
  double scale = floor;
  for (double v : reference) scale = std::max(scale, std::fabs(v));
  double worst = 0.0;
  for (size_t i = 0; i < reference.size(); ++i)
    worst = std::max(worst, std::fabs(reference[i] - got[i]));
  return worst / scale;
}

std::vector<double> to_double(const std::vector<float> &v) {
  return std::vector<double>(v.begin(), v.end());
}

std::vector<double> to_double(const float *p, size_t n) {
  return std::vector<double>(p, p + n);
}

}  // namespace testsupport
}  // namespace scesep
