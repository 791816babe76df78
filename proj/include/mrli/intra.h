#pragma once

#include <vector>

#include "mrli/refline.h"

namespace mrli {

constexpr int kModePlanar = 0;
constexpr int kModeDc = 1;
constexpr int kModeHor = 10;
constexpr int kModeVer = 26;
constexpr int kNumIntraModes = 35;

struct PredBlock {
  int n = 0;
  int mode = 0;
  int line = 0;
  std::vector<Sample> samples;  // n * n

  Sample at(int x, int y) const { return samples[static_cast<size_t>(y) * n + x]; }
  Sample& at(int x, int y) { return samples[static_cast<size_t>(y) * n + x]; }
};

// Projection displacement in 1/32-pel units for angular modes 2..34.
int angle_of_mode(int dir);
// Inverse angle (8192 / |d|, rounded) for modes with negative displacement.
int inverse_angle_of_mode(int dir);

// Unified main reference used by the angular core: the top row (or left
// column for horizontal modes) extended by the inverse-angle projection of
// the other side when the displacement is negative.
struct UnifiedRef {
  std::vector<Sample> buf;
  int offset = 0;
  int lo = 0;
  int hi = 0;
  Sample at(int i) const {
    assert(i >= lo && i <= hi);
    return buf[i + offset];
  }
};
UnifiedRef build_unified_ref(const RefLine& refline, int dir);

PredBlock predict_angular(const RefLine& refline, int dir);
PredBlock predict_dc(const RefLine& refline);
PredBlock predict_planar(const RefLine& refline);

// Dispatch over the 35 modes. For M = 0 the HEVC DC/horizontal/vertical
// boundary post-filters are applied on luma blocks smaller than 32 when
// `boundary_filters` is set; further lines never use them.
PredBlock predict(const RefLine& refline, int mode,
                  bool boundary_filters = true, bool is_luma = true);

}  // namespace mrli
