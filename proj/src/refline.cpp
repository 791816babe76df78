#include "mrli/refline.h"

#include "mrli/intra.h"

namespace mrli {

RefLine gather_reference_line(const Plane& recon, const BlockRegion& region,
                              int m, int bit_depth,
                              const std::vector<uint8_t>* coded_mask) {
  assert(m >= 0);
  RefLine rl;
  rl.n = region.n;
  rl.m = m;
  rl.bit_depth = bit_depth;
  rl.samples.assign(rl.total(), 0);
  rl.avail.assign(rl.total(), 0);

  auto fetch = [&](int bx, int by, int idx) {
    const int px = region.x + bx;
    const int py = region.y + by;
    const bool inside =
        px >= 0 && px < recon.width && py >= 0 && py < recon.height;
    bool ok = inside;
    if (inside && coded_mask) {
      ok = (*coded_mask)[static_cast<size_t>(py) * recon.width + px] != 0;
    }
    if (ok) {
      rl.samples[idx] = recon.at(px, py);
      rl.avail[idx] = 1;
    }
  };

  // Left column bottom-up, then corner, then top row left to right.
  const int corner = rl.corner_index();
  for (int y = 2 * rl.n + m - 1; y >= -m; --y) {
    fetch(-m - 1, y, corner - (y + m + 1));
  }
  fetch(-m - 1, -m - 1, corner);
  for (int x = -m; x <= 2 * rl.n + m - 1; ++x) {
    fetch(x, -m - 1, corner + x + m + 1);
  }

  // Substitution padding.
  int first_avail = -1;
  for (int i = 0; i < rl.total(); ++i) {
    if (rl.avail[i]) {
      first_avail = i;
      break;
    }
  }
  if (first_avail < 0) {
    const Sample fill = static_cast<Sample>(mid_gray(bit_depth));
    std::fill(rl.samples.begin(), rl.samples.end(), fill);
    return rl;
  }
  for (int i = first_avail - 1; i >= 0; --i) {
    rl.samples[i] = rl.samples[i + 1];
  }
  for (int i = first_avail + 1; i < rl.total(); ++i) {
    if (!rl.avail[i]) rl.samples[i] = rl.samples[i - 1];
  }
  return rl;
}

bool smoothing_applies(int n, int mode) {
  if (mode == kModeDc || n < 8) return false;
  if (mode == kModePlanar) return true;
  const int dist = std::min(std::abs(mode - 10), std::abs(mode - 26));
  int threshold;
  if (n == 8) {
    threshold = 7;
  } else if (n == 16) {
    threshold = 1;
  } else {
    threshold = 0;  // 32 and above
  }
  return dist > threshold;
}

RefLine smooth_reference(const RefLine& refline, int mode) {
  if (!smoothing_applies(refline.n, mode)) return refline;
  RefLine out = refline;
  const int total = refline.total();
  for (int i = 1; i + 1 < total; ++i) {
    out.samples[i] = static_cast<Sample>(
        (refline.samples[i - 1] + 2 * refline.samples[i] +
         refline.samples[i + 1] + 2) >>
        2);
  }
  out.smoothed = true;
  return out;
}

RefLine as_extended(const RefLine& refline) {
  assert(refline.m >= 1);
  RefLine out = refline;
  out.n = refline.n + 1;
  out.m = refline.m - 1;
  return out;
}

}  // namespace mrli
