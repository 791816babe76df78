#include "mrli/residue.h"

namespace mrli {

CompType compensation_type_for_mode(int mode, bool wide_horizontal_range) {
  assert(mode >= 0 && mode < kNumIntraModes);
  if (mode == kModePlanar || mode == kModeDc) return CompType::kBothSide;
  if (mode == 2 || mode == 34) return CompType::kBiDirectional;
  if (mode >= 7 && mode <= 13) return CompType::kVertical;
  if (mode >= 14 && mode <= 22) return CompType::kParallel;
  const int hor_last = wide_horizontal_range ? 30 : 29;
  if (mode >= 23 && mode <= hor_last) return CompType::kHorizontal;
  return CompType::kNone;
}

bool ExtendedPred::ring_top(int x, int* value) const {
  assert(x >= -1 && x <= n + 2);
  if (x < n) {
    *value = at(x, -1);
    return true;
  }
  if (!top_extra_valid[x - n]) return false;
  *value = top_extra[x - n];
  return true;
}

bool ExtendedPred::ring_left(int y, int* value) const {
  assert(y >= -1 && y <= n + 2);
  if (y < n) {
    *value = at(-1, y);
    return true;
  }
  if (!left_extra_valid[y - n]) return false;
  *value = left_extra[y - n];
  return true;
}

// Evaluates the angular equation at one position of the enlarged block,
// returning false when the reference array does not cover the projection.
static bool angular_sample_at(const UnifiedRef& ref, int m, int d,
                              int main_pos, int perp_pos, int* value) {
  const int t = (perp_pos + m + 1) * d;
  const int c = t >> 5;
  const int z = t & 31;
  const int i = main_pos + c;
  if (i < ref.lo || (z == 0 ? i : i + 1) > ref.hi) return false;
  *value = z == 0 ? ref.at(i)
                  : ((32 - z) * ref.at(i) + z * ref.at(i + 1) + 16) >> 5;
  return true;
}

ExtendedPred extended_prediction(const RefLine& refline, int mode) {
  if (refline.m < 1) {
    throw CodecError("extended prediction requires a further reference line");
  }
  const RefLine ext_rl = as_extended(refline);
  const PredBlock block = predict(ext_rl, mode, /*boundary_filters=*/false);

  ExtendedPred ext;
  ext.n = refline.n;
  ext.m = refline.m;
  ext.mode = mode;
  ext.samples = block.samples;

  if (mode == kModeDc) {
    const int dc = block.samples[0];
    ext.top_extra = {dc, dc, dc};
    ext.left_extra = {dc, dc, dc};
    ext.top_extra_valid = {1, 1, 1};
    ext.left_extra_valid = {1, 1, 1};
  } else if (mode != kModePlanar) {
    const bool vertical = mode >= 18;
    const int d = angle_of_mode(mode);
    const UnifiedRef ref = build_unified_ref(ext_rl, mode);
    // Positions n'..n'+2 in enlarged coordinates along each axis.
    for (int k = 0; k < 3; ++k) {
      const int pos = ext_rl.n + k;
      int v = 0;
      // Along the main axis at perpendicular coordinate 0.
      if (angular_sample_at(ref, ext_rl.m, d, pos, 0, &v)) {
        (vertical ? ext.top_extra : ext.left_extra)[k] = v;
        (vertical ? ext.top_extra_valid : ext.left_extra_valid)[k] = 1;
      }
      // Down the side axis at main coordinate 0.
      if (angular_sample_at(ref, ext_rl.m, d, 0, pos, &v)) {
        (vertical ? ext.left_extra : ext.top_extra)[k] = v;
        (vertical ? ext.left_extra_valid : ext.top_extra_valid)[k] = 1;
      }
    }
  }
  return ext;
}

bool ResidueLine::all_zero() const {
  for (int32_t v : top) {
    if (v != 0) return false;
  }
  for (int32_t v : left) {
    if (v != 0) return false;
  }
  return true;
}

ResidueLine compute_interval_residue(const Plane& recon,
                                     const std::vector<uint8_t>* coded_mask,
                                     const BlockRegion& region,
                                     const ExtendedPred& ext) {
  const int n = ext.n;
  ResidueLine res;
  res.n = n;
  res.top.assign(n + 4, 0);
  res.left.assign(n + 4, 0);

  auto recon_at = [&](int bx, int by, int* value) {
    const int px = region.x + bx;
    const int py = region.y + by;
    if (px < 0 || px >= recon.width || py < 0 || py >= recon.height) return false;
    if (coded_mask &&
        !(*coded_mask)[static_cast<size_t>(py) * recon.width + px]) {
      return false;
    }
    *value = recon.at(px, py);
    return true;
  };

  for (int x = -1; x <= n + 2; ++x) {
    int r = 0, p = 0;
    if (recon_at(x, -1, &r) && ext.ring_top(x, &p)) res.top[x + 1] = r - p;
  }
  for (int y = -1; y <= n + 2; ++y) {
    int r = 0, p = 0;
    if (recon_at(-1, y, &r) && ext.ring_left(y, &p)) res.left[y + 1] = r - p;
  }
  return res;
}

namespace {

constexpr int kCompLines = 3;  // K for the multi-line compensation types

// (A - k) / B weights with A = 3, B = 4, in fixed point.
inline int weighted_k(int residue, int k) { return (residue * (3 - k) + 2) >> 2; }

// Eq-style mode-distance weight for the single-line types, over 64.
inline int weighted_mode(int residue, int mode, int center) {
  const int w = (14 - std::abs(mode - center)) * 3;
  return (residue * w + 32) >> 6;
}

}  // namespace

void compensate(PredBlock& pred, const ResidueLine& residue, int mode,
                int bit_depth, bool wide_horizontal_range) {
  const CompType type = compensation_type_for_mode(mode, wide_horizontal_range);
  if (type == CompType::kNone) return;
  const int n = pred.n;
  assert(residue.n == n);

  std::vector<int32_t> acc(pred.samples.begin(), pred.samples.end());
  auto acc_at = [&](int x, int y) -> int32_t& {
    return acc[static_cast<size_t>(y) * n + x];
  };

  switch (type) {
    case CompType::kVertical:
      for (int x = 0; x < n; ++x) {
        acc_at(x, 0) += weighted_mode(residue.top_at(x), mode, kModeHor);
      }
      break;
    case CompType::kHorizontal:
      for (int y = 0; y < n; ++y) {
        acc_at(0, y) += weighted_mode(residue.left_at(y), mode, kModeVer);
      }
      break;
    case CompType::kBothSide:
      for (int y = 0; y < kCompLines; ++y) {
        for (int x = 0; x < n; ++x) {
          acc_at(x, y) += weighted_k(residue.top_at(x), y);
        }
      }
      for (int x = 0; x < kCompLines; ++x) {
        for (int y = 0; y < n; ++y) {
          acc_at(x, y) += weighted_k(residue.left_at(y), x);
        }
      }
      break;
    case CompType::kBiDirectional:
      for (int y = 0; y < kCompLines; ++y) {
        for (int x = 0; x < n; ++x) {
          acc_at(x, y) += weighted_k(residue.top_at(x + y + 1), y);
        }
      }
      for (int x = 0; x < kCompLines; ++x) {
        for (int y = 0; y < n; ++y) {
          acc_at(x, y) += weighted_k(residue.left_at(x + y + 1), x);
        }
      }
      break;
    case CompType::kParallel: {
      const bool vertical = mode >= 18;
      const int d = angle_of_mode(mode);
      const int inv_angle = inverse_angle_of_mode(mode);
      assert(d < 0);
      // Unified residue line on L_0, extended by the inverse-angle
      // projection of the other side, as in prediction with M = 0.
      const int i_lo = std::min(-2, ((n * d) >> 5) - 1);
      const int offset = -i_lo;
      std::vector<int32_t> res_main(n + 3 + offset, 0);
      auto main_res = [&](int i) {
        return vertical ? residue.top_at(i) : residue.left_at(i);
      };
      auto side_res = [&](int i) {
        return vertical ? residue.left_at(i) : residue.top_at(i);
      };
      for (int i = -1; i <= n + 2; ++i) res_main[i + offset] = main_res(i);
      for (int i = -2; i >= i_lo; --i) {
        const int k = -(i + 1);
        const int v = ((k * inv_angle + 128) >> 8) - 1;
        res_main[i + offset] = v <= n + 2 ? side_res(v) : 0;
      }
      for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
          if (x >= kCompLines && y >= kCompLines) continue;
          const int t = vertical ? (x << 5) + (y + 1) * d
                                 : (y << 5) + (x + 1) * d;
          const int i = t >> 5;
          const int z = t & 31;
          assert(i >= i_lo && (z == 0 ? i : i + 1) <= n + 2);
          const int e = z == 0 ? res_main[i + offset]
                               : ((32 - z) * res_main[i + offset] +
                                  z * res_main[i + 1 + offset] + 16) >>
                                     5;
          acc_at(x, y) += weighted_k(e, std::min(x, y));
        }
      }
      break;
    }
    case CompType::kNone:
      break;
  }

  for (size_t i = 0; i < pred.samples.size(); ++i) {
    pred.samples[i] = static_cast<Sample>(clamp_sample(acc[i], bit_depth));
  }
}

PredBlock blend_with_nearest(const PredBlock& pred_m_compensated,
                             const PredBlock& pred_0) {
  if (pred_m_compensated.n != pred_0.n) {
    throw CodecError("blend size mismatch");
  }
  if (pred_m_compensated.mode != pred_0.mode) {
    throw CodecError("blend mode mismatch");
  }
  PredBlock out = pred_m_compensated;
  for (size_t i = 0; i < out.samples.size(); ++i) {
    out.samples[i] = static_cast<Sample>(
        (3 * pred_m_compensated.samples[i] + pred_0.samples[i] + 2) >> 2);
  }
  return out;
}

}  // namespace mrli
