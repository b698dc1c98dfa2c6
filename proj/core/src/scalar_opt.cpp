/*
 * Copyright 2026 The chinfo Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "chinfo/scalar_opt.hpp"

#include <cmath>
#include <string>

#include "chinfo/errors.hpp"

namespace chinfo {

ScalarMinResult minimize_scalar(const std::function<double(double)>& f, double a, double b,
                                double tol) {
  if (!(a < b)) throw InvalidArgument("minimize_scalar requires a < b");
  if (!(tol > 0.0)) throw InvalidArgument("minimize_scalar requires tol > 0");

  int evaluations = 0;
  auto eval = [&](double x) {
    ++evaluations;
    const double v = f(x);
    if (!std::isfinite(v)) {
      throw EvaluationError("objective is not finite at x = " + std::to_string(x), x);
    }
    return v;
  };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double fa = eval(a);
  const double fb = eval(b);

  double lo = a;
  double hi = b;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = eval(c);
  double fd = eval(d);
  while (hi - lo > tol) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = eval(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = eval(d);
    }
  }

  ScalarMinResult best{fc <= fd ? c : d, fc <= fd ? fc : fd, 0};
  if (fa < best.value) best = {a, fa, 0};
  if (fb < best.value) best = {b, fb, 0};
  best.evaluations = evaluations;
  return best;
}

}  // namespace chinfo
