#include "mrli/intra.h"

namespace mrli {

// intraPredAngle for modes 2..34.
static const int kAngleTable[33] = {32,  26,  21,  17,  13,  9,   5,   2,  0,
                                    -2,  -5,  -9,  -13, -17, -21, -26, -32,
                                    -26, -21, -17, -13, -9,  -5,  -2,  0,
                                    2,   5,   9,   13,  17,  21,  26,  32};

// 8192 / |angle|, rounded, for |angle| in {2, 5, 9, 13, 17, 21, 26, 32}.
static const int kInvAngleTable[9] = {0, 4096, 1638, 910, 630, 482, 390, 315, 256};

static int inv_angle_index(int abs_angle) {
  switch (abs_angle) {
    case 2: return 1;
    case 5: return 2;
    case 9: return 3;
    case 13: return 4;
    case 17: return 5;
    case 21: return 6;
    case 26: return 7;
    case 32: return 8;
    default: assert(false); return 0;
  }
}

int angle_of_mode(int dir) {
  if (dir < 2 || dir > 34) throw CodecError("non-angular mode " + std::to_string(dir));
  return kAngleTable[dir - 2];
}

int inverse_angle_of_mode(int dir) {
  const int d = angle_of_mode(dir);
  assert(d < 0);
  return kInvAngleTable[inv_angle_index(-d)];
}

// Index range of the sources is [-m-1, 2n+m-1]; for horizontal modes the
// main and side roles of the top row and left column are swapped.
UnifiedRef build_unified_ref(const RefLine& rl, int dir) {
  const int n = rl.n;
  const int m = rl.m;
  const int d = angle_of_mode(dir);
  const bool vertical = dir >= 18;
  UnifiedRef ref;
  ref.offset = n + m + 1;
  ref.hi = 2 * n + m - 1;
  ref.lo = d < 0 ? ((n + m) * d) >> 5 : -m - 1;
  ref.buf.assign(3 * n + 2 * m + 1, 0);
  auto main_src = [&](int i) { return vertical ? rl.top(i) : rl.left(i); };
  auto side_src = [&](int i) { return vertical ? rl.left(i) : rl.top(i); };
  for (int i = -m - 1; i <= 2 * n + m - 1; ++i) ref.buf[i + ref.offset] = main_src(i);
  if (d < 0) {
    const int inv_angle = inverse_angle_of_mode(dir);
    for (int i = -m - 2; i >= ref.lo; --i) {
      const int k = -(i + m + 1);  // >= 1
      int v = -m - 1 + ((k * inv_angle + 128) >> 8);
      v = std::min(v, 2 * n + m - 1);
      ref.buf[i + ref.offset] = side_src(v);
    }
  }
  return ref;
}

PredBlock predict_angular(const RefLine& refline, int dir) {
  const int n = refline.n;
  const int m = refline.m;
  const int d = angle_of_mode(dir);
  const bool vertical = dir >= 18;
  const UnifiedRef ref = build_unified_ref(refline, dir);

  PredBlock out;
  out.n = n;
  out.mode = dir;
  out.line = m;
  out.samples.assign(static_cast<size_t>(n) * n, 0);
  for (int y = 0; y < n; ++y) {
    const int t = (y + m + 1) * d;
    const int c = t >> 5;
    const int z = t & 31;
    for (int x = 0; x < n; ++x) {
      const int i = x + c;
      const int p = z == 0
                        ? ref.at(i)
                        : ((32 - z) * ref.at(i) + z * ref.at(i + 1) + 16) >> 5;
      if (vertical) {
        out.at(x, y) = static_cast<Sample>(p);
      } else {
        out.at(y, x) = static_cast<Sample>(p);
      }
    }
  }
  return out;
}

PredBlock predict_dc(const RefLine& refline) {
  const int n = refline.n;
  int64_t sum = 0;
  for (int x = 0; x < 2 * n; ++x) sum += refline.top(x);
  for (int y = 0; y < 2 * n; ++y) sum += refline.left(y);
  const Sample dc = static_cast<Sample>((sum + 2 * n) / (4 * n));
  PredBlock out;
  out.n = n;
  out.mode = kModeDc;
  out.line = refline.m;
  out.samples.assign(static_cast<size_t>(n) * n, dc);
  return out;
}

PredBlock predict_planar(const RefLine& refline) {
  const int n = refline.n;
  const int m = refline.m;
  const int bottom_left = refline.left(n);
  const int top_right = refline.top(n);
  PredBlock out;
  out.n = n;
  out.mode = kModePlanar;
  out.line = m;
  out.samples.assign(static_cast<size_t>(n) * n, 0);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      const int pv = (n - y - 1) * refline.top(x) + (y + m + 1) * bottom_left;
      const int ph = (n - x - 1) * refline.left(y) + (x + m + 1) * top_right;
      out.at(x, y) = static_cast<Sample>((pv + ph + n + m) / (2 * (n + m)));
    }
  }
  return out;
}

static void apply_boundary_filters(PredBlock& block, const RefLine& rl,
                                   int mode, int bit_depth) {
  const int n = block.n;
  if (mode == kModeDc) {
    const int dc = block.at(0, 0);
    for (int y = n - 1; y >= 1; --y) {
      block.at(0, y) = static_cast<Sample>((rl.left(y) + 3 * dc + 2) >> 2);
    }
    for (int x = n - 1; x >= 1; --x) {
      block.at(x, 0) = static_cast<Sample>((rl.top(x) + 3 * dc + 2) >> 2);
    }
    block.at(0, 0) =
        static_cast<Sample>((rl.left(0) + 2 * dc + rl.top(0) + 2) >> 2);
  } else if (mode == kModeVer) {
    const int corner = rl.top(-1);
    for (int y = 0; y < n; ++y) {
      block.at(0, y) = static_cast<Sample>(
          clamp_sample(rl.top(0) + ((rl.left(y) - corner) >> 1), bit_depth));
    }
  } else if (mode == kModeHor) {
    const int corner = rl.top(-1);
    for (int x = 0; x < n; ++x) {
      block.at(x, 0) = static_cast<Sample>(
          clamp_sample(rl.left(0) + ((rl.top(x) - corner) >> 1), bit_depth));
    }
  }
}

PredBlock predict(const RefLine& refline, int mode, bool boundary_filters,
                  bool is_luma) {
  if (mode < 0 || mode >= kNumIntraModes) {
    throw CodecError("invalid intra mode " + std::to_string(mode));
  }
  PredBlock block;
  if (mode == kModePlanar) {
    block = predict_planar(refline);
  } else if (mode == kModeDc) {
    block = predict_dc(refline);
  } else {
    block = predict_angular(refline, mode);
  }
  if (boundary_filters && refline.m == 0 && is_luma && refline.n < 32 &&
      (mode == kModeDc || mode == kModeHor || mode == kModeVer)) {
    apply_boundary_filters(block, refline, mode, refline.bit_depth);
  }
  return block;
}

}  // namespace mrli
