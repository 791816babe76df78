#pragma once

#include <vector>

#include "mrli/frame.h"

namespace mrli {

// Unified reference array for line L_M around an N x N block.
// Geometry relative to the block origin: the top row holds r[x, -M-1] for
// x in [-M-1, 2N+M-1], the left column r[-M-1, y] for y in [-M, 2N+M-1].
// 4(N+M)+1 samples in total. Storage runs from the bottom of the left
// column (index 0) up through the corner and right along the top row.
struct RefLine {
  int n = 0;
  int m = 0;
  int bit_depth = 8;
  bool smoothed = false;
  std::vector<Sample> samples;
  std::vector<uint8_t> avail;  // pre-padding availability, same indexing

  int total() const { return 4 * (n + m) + 1; }
  int corner_index() const { return 2 * (n + m); }

  Sample top(int x) const {
    assert(x >= -m - 1 && x <= 2 * n + m - 1);
    return samples[corner_index() + x + m + 1];
  }
  Sample left(int y) const {
    assert(y >= -m - 1 && y <= 2 * n + m - 1);
    return samples[corner_index() - (y + m + 1)];
  }
  bool top_avail(int x) const { return avail[corner_index() + x + m + 1] != 0; }
  bool left_avail(int y) const { return avail[corner_index() - (y + m + 1)] != 0; }
};

// Assembles the reference array for (region, M) from the reconstruction.
// A sample is available when it lies inside the plane and, if a coded mask
// is given, its mask bit is set. Unavailable samples are padded by
// substitution scanning from the bottom-left to the top-right; an entirely
// unavailable line is filled with mid-gray.
RefLine gather_reference_line(const Plane& recon, const BlockRegion& region,
                              int m, int bit_depth,
                              const std::vector<uint8_t>* coded_mask);

// HEVC-style smoothing condition for block size and mode.
bool smoothing_applies(int n, int mode);

// Applies the [1 2 1]/4 filter over the interior of the unified array when
// the condition holds for (n, mode); otherwise returns the input unchanged.
RefLine smooth_reference(const RefLine& refline, int mode);

// Reinterpret the same physical samples as the reference of the enlarged
// (N+1) x (N+1) block anchored one sample up-left (line offset M-1).
RefLine as_extended(const RefLine& refline);

}  // namespace mrli
