#pragma once

#include <array>
#include <string>
#include <vector>

#include "mrli/common.h"

namespace mrli {

enum PlaneId { kPlaneY = 0, kPlaneCb = 1, kPlaneCr = 2 };

struct Plane {
  int width = 0;
  int height = 0;
  std::vector<Sample> samples;

  Plane() = default;
  Plane(int w, int h, Sample fill = 0)
      : width(w), height(h), samples(static_cast<size_t>(w) * h, fill) {}

  Sample at(int x, int y) const {
    assert(x >= 0 && x < width && y >= 0 && y < height);
    return samples[static_cast<size_t>(y) * width + x];
  }
  Sample& at(int x, int y) {
    assert(x >= 0 && x < width && y >= 0 && y < height);
    return samples[static_cast<size_t>(y) * width + x];
  }
};

// Planar 4:2:0 frame. Luma plane plus two half-resolution chroma planes.
struct Frame {
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  std::array<Plane, 3> planes;

  Frame() = default;
  Frame(int w, int h, int bd);

  const Plane& plane(int id) const { return planes[id]; }
  Plane& plane(int id) { return planes[id]; }

  bool same_geometry(const Frame& o) const {
    return width == o.width && height == o.height && bit_depth == o.bit_depth;
  }
};

struct BlockRegion {
  int plane_id = kPlaneY;
  int x = 0;
  int y = 0;
  int n = 0;  // 4, 8, 16, 32 or 64
};

// Read-only N x N view with (0,0) at the region origin.
class BlockView {
 public:
  BlockView(const Frame& frame, const BlockRegion& region);
  Sample at(int x, int y) const {
    assert(x >= 0 && x < region_.n && y >= 0 && y < region_.n);
    return plane_->at(region_.x + x, region_.y + y);
  }
  int size() const { return region_.n; }

 private:
  const Plane* plane_;
  BlockRegion region_;
};

size_t yuv_frame_bytes(int width, int height, int bit_depth);

Frame load_yuv(const std::string& path, int width, int height, int bit_depth,
               int frame_index);
void write_yuv(const Frame& frame, const std::string& path, bool append);

// Edge-replicated copy padded to multiples of `multiple` (chroma: half).
Frame pad_to_multiple(const Frame& frame, int multiple);
// Top-left crop back to the given luma dimensions.
Frame crop(const Frame& frame, int width, int height);

}  // namespace mrli
