/*
 Copyright 2026 The laxsynth Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#pragma once

#include "laxsynth/types.hpp"

namespace laxsynth::small_lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  double objective = 0.0;
  Vec z;
};

/// Dense two-phase simplex (Bland's rule) for
///   min c'z  s.t.  Aeq z = beq,  z >= 0.
/// Intended for the handful-of-rows programs that arise per hull query.
/// Redundant equality rows are detected and dropped after phase one.
Result solve_standard_form(const Mat& Aeq, const Vec& beq, const Vec& c, double tol = 1e-10);

}  // namespace laxsynth::small_lp
