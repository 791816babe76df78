#pragma once

#include <vector>

#include "mrli/common.h"

namespace mrli {

struct CoeffBlock {
  int n = 0;
  int qp = 0;
  bool is_dst = false;
  std::vector<int16_t> levels;  // n * n, raster order

  bool all_zero() const {
    for (int16_t v : levels) {
      if (v != 0) return false;
    }
    return true;
  }
};

// HEVC-style integer core transform (DST-VII at 4x4 when use_dst).
// Residual and coefficients are raster order, n in {4, 8, 16, 32}.
std::vector<int32_t> forward_transform(const std::vector<int32_t>& residual,
                                       int n, bool use_dst, int bit_depth);
std::vector<int32_t> inverse_transform(const std::vector<int32_t>& coeffs,
                                       int n, bool use_dst, int bit_depth);

// Flat scalar quantizer, step doubling every 6 QP, intra dead-zone 171/512.
CoeffBlock quantize(const std::vector<int32_t>& coeffs, int n, int qp,
                    bool is_dst, int bit_depth);
std::vector<int32_t> dequantize(const CoeffBlock& block, int bit_depth);

// Dequantize + inverse transform.
std::vector<int32_t> reconstruct_residual(const CoeffBlock& block,
                                          int bit_depth);

// Effective quantizer step size for the given QP in coefficient units.
double quant_step_size(int qp, int n, int bit_depth);

int chroma_qp_from_luma(int luma_qp);

}  // namespace mrli
