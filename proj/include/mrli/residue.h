#pragma once

#include <array>

#include "mrli/intra.h"

namespace mrli {

enum class CompType {
  kNone,
  kVertical,
  kHorizontal,
  kBothSide,
  kParallel,
  kBiDirectional,
};

// Per-mode compensation type. With `wide_horizontal_range` the horizontal
// family also covers mode 30.
CompType compensation_type_for_mode(int mode, bool wide_horizontal_range = false);

// Prediction of the enlarged (N+1) x (N+1) block anchored one sample
// up-left of the current block, generated from line L_M so that its row and
// column -1 coincide with L_0 positions. The three ring positions beyond
// the enlarged block on each side are kept for the diagonal compensation;
// positions the reference array cannot cover are flagged invalid.
struct ExtendedPred {
  int n = 0;     // original block size
  int m = 0;     // source line of the prediction
  int mode = 0;
  std::vector<Sample> samples;  // (n+1)^2, x and y in [-1, n-1]
  std::array<int, 3> top_extra{};
  std::array<uint8_t, 3> top_extra_valid{};
  std::array<int, 3> left_extra{};
  std::array<uint8_t, 3> left_extra_valid{};

  Sample at(int x, int y) const {
    assert(x >= -1 && x < n && y >= -1 && y < n);
    return samples[static_cast<size_t>(y + 1) * (n + 1) + (x + 1)];
  }
  // Ring accessors for (x, -1) and (-1, y), x/y in [-1, n+2].
  bool ring_top(int x, int* value) const;
  bool ring_left(int y, int* value) const;
};

ExtendedPred extended_prediction(const RefLine& refline, int mode);

// Interval residues r - p on the L_0 ring. Entries whose reconstruction is
// unavailable or whose prediction could not be formed are zero.
struct ResidueLine {
  int n = 0;
  std::vector<int32_t> top;   // x in [-1, n+2], index x+1
  std::vector<int32_t> left;  // y in [-1, n+2], index y+1

  int32_t top_at(int x) const { return top[x + 1]; }
  int32_t left_at(int y) const { return left[y + 1]; }
  bool all_zero() const;
};

ResidueLine compute_interval_residue(const Plane& recon,
                                     const std::vector<uint8_t>* coded_mask,
                                     const BlockRegion& region,
                                     const ExtendedPred& ext);

// Applies the compensation type of `mode` to the block boundary samples,
// clamping results to the sample range. Type none returns the input as is.
void compensate(PredBlock& pred, const ResidueLine& residue, int mode,
                int bit_depth, bool wide_horizontal_range = false);

// (3 * further + nearest + 2) >> 2 blend of two same-size, same-mode blocks.
PredBlock blend_with_nearest(const PredBlock& pred_m_compensated,
                             const PredBlock& pred_0);

}  // namespace mrli
