#pragma once

#include <cstdint>

#include "mrli/common.h"

namespace mrli {

// Sum of absolute Hadamard-transformed differences between two n x n
// blocks given by accessor strides. 8x8 tiling, 4x4 for n == 4.
uint64_t satd(const Sample* a, int stride_a, const Sample* b, int stride_b,
              int n);

uint64_t sse(const Sample* a, int stride_a, const Sample* b, int stride_b,
             int w, int h);

}  // namespace mrli
