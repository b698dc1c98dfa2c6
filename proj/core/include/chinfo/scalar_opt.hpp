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

#pragma once

#include <functional>

namespace chinfo {

struct ScalarMinResult {
  double argmin = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Golden-section search for the minimum of a unimodal `f` on [a, b].
///
/// Both endpoints are evaluated as well, and win whenever they are strictly
/// below the interior estimate, so boundary minima come back exactly at `a`
/// or `b`. Throws InvalidArgument unless a < b and tol > 0, and
/// EvaluationError (carrying the abscissa) if `f` returns a non-finite value.
ScalarMinResult minimize_scalar(const std::function<double(double)>& f, double a, double b,
                                double tol);

}  // namespace chinfo
