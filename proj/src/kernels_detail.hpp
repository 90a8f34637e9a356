#pragma once

#include "moebius_kit/kernels.hpp"

namespace moebius_kit::kernels::detail {

void accumulate(PhiTestResult& r, TetradEvaluation&& ev);

/// Sums counts, keeps the larger gap and the smaller-index witness.
void merge(PhiTestResult& into, PhiTestResult&& part);

}  // namespace moebius_kit::kernels::detail
