#include "mrli/corpus.h"

namespace mrli {

namespace {

uint64_t splitmix(uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

uint64_t hash3(uint64_t seed, uint64_t a, uint64_t b) {
  return splitmix(seed ^ splitmix(a ^ splitmix(b)));
}

// Triangle wave over [0, 2 * period) mapped to [-amplitude, amplitude].
int triangle(int phase, int period, int amplitude) {
  int p = phase % (2 * period);
  if (p < 0) p += 2 * period;
  const int up = p < period ? p : 2 * period - p;
  return (2 * up * amplitude) / period - amplitude;
}

Frame flat_chroma_frame(int w, int h) {
  Frame f(w, h, 8);
  for (int p = kPlaneCb; p <= kPlaneCr; ++p) {
    std::fill(f.plane(p).samples.begin(), f.plane(p).samples.end(),
              Sample{128});
  }
  return f;
}

// One octave of value noise: lattice values hashed per cell corner,
// bilinear interpolation in fixed point.
int value_noise(uint64_t seed, int x, int y, int cell, int amplitude) {
  const int cx = x / cell, cy = y / cell;
  const int fx = x % cell, fy = y % cell;
  auto corner = [&](int ix, int iy) {
    return static_cast<int>(hash3(seed, ix, iy) & 0xff) - 128;
  };
  const int v00 = corner(cx, cy), v10 = corner(cx + 1, cy);
  const int v01 = corner(cx, cy + 1), v11 = corner(cx + 1, cy + 1);
  const int top = v00 * (cell - fx) + v10 * fx;
  const int bot = v01 * (cell - fx) + v11 * fx;
  const int v = top * (cell - fy) + bot * fy;  // scaled by cell^2
  return (v * amplitude) / (128 * cell * cell);
}

}  // namespace

Frame make_grating(int w, int h, int dx, int dy, int period, int amplitude) {
  Frame f = flat_chroma_frame(w, h);
  Plane& y = f.plane(kPlaneY);
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      y.at(i, j) = static_cast<Sample>(
          clamp_sample(128 + triangle(i * dx + j * dy, period, amplitude), 8));
    }
  }
  return f;
}

Frame make_noisy_grating(int w, int h, int dx, int dy, int period,
                         int amplitude, int noise_range, uint64_t seed) {
  Frame f = make_grating(w, h, dx, dy, period, amplitude);
  Plane& y = f.plane(kPlaneY);
  // Spatially correlated texture noise, not white noise; white noise has no
  // preferred reference line and swamps the line statistics.
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      const int n = value_noise(seed, i, j, 8, noise_range) +
                    value_noise(seed + 1, i, j, 4, (noise_range * 5) / 8);
      y.at(i, j) = static_cast<Sample>(clamp_sample(y.at(i, j) + n, 8));
    }
  }
  return f;
}

Frame make_ramp(int w, int h, int gx, int gy) {
  Frame f = flat_chroma_frame(w, h);
  Plane& y = f.plane(kPlaneY);
  const int span = gx * (w - 1) + gy * (h - 1);
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      const int v = span > 0 ? 16 + ((gx * i + gy * j) * 224) / span : 128;
      y.at(i, j) = static_cast<Sample>(clamp_sample(v, 8));
    }
  }
  return f;
}

Frame make_dome(int w, int h) {
  Frame f = flat_chroma_frame(w, h);
  Plane& y = f.plane(kPlaneY);
  const int cx = w / 2, cy = h / 2;
  const int r2 = cx * cx + cy * cy;
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      const int d2 = (i - cx) * (i - cx) + (j - cy) * (j - cy);
      y.at(i, j) = static_cast<Sample>(clamp_sample(240 - (d2 * 210) / r2, 8));
    }
  }
  return f;
}

Frame make_natural(int w, int h, uint64_t seed) {
  Frame f(w, h, 8);
  Plane& y = f.plane(kPlaneY);
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      int v = 128;
      v += value_noise(seed + 1, i, j, 64, 56);
      v += value_noise(seed + 2, i, j, 32, 36);
      v += value_noise(seed + 3, i, j, 16, 24);
      v += value_noise(seed + 4, i, j, 8, 16);
      v += value_noise(seed + 5, i, j, 4, 10);
      v += static_cast<int>(hash3(seed + 6, i, j) % 7) - 3;
      y.at(i, j) = static_cast<Sample>(clamp_sample(v, 8));
    }
  }
  for (int p = kPlaneCb; p <= kPlaneCr; ++p) {
    Plane& c = f.plane(p);
    for (int j = 0; j < c.height; ++j) {
      for (int i = 0; i < c.width; ++i) {
        int v = 128;
        v += value_noise(seed + 10 * p, i, j, 32, 20);
        v += value_noise(seed + 10 * p + 1, i, j, 8, 8);
        c.at(i, j) = static_cast<Sample>(clamp_sample(v, 8));
      }
    }
  }
  return f;
}

std::vector<NamedFrame> census_corpus() {
  std::vector<NamedFrame> v;
  v.push_back({"noisy-grating-h", make_noisy_grating(128, 128, 1, 0, 24, 40, 16, 101)});
  v.push_back({"noisy-grating-v", make_noisy_grating(128, 128, 0, 1, 28, 36, 20, 102)});
  v.push_back({"noisy-grating-d1", make_noisy_grating(128, 128, 1, 1, 24, 36, 16, 103)});
  v.push_back({"noisy-grating-d2", make_noisy_grating(128, 128, 2, -1, 36, 36, 20, 104)});
  v.push_back({"natural-1", make_natural(128, 128, 2001)});
  v.push_back({"natural-2", make_natural(128, 128, 2002)});
  v.push_back({"natural-3", make_natural(128, 128, 2003)});
  return v;
}

std::vector<NamedFrame> smooth_corpus() {
  std::vector<NamedFrame> v;
  v.push_back({"ramp-h", make_ramp(128, 128, 1, 0)});
  v.push_back({"ramp-diag", make_ramp(128, 128, 2, 1)});
  v.push_back({"dome", make_dome(128, 128)});
  v.push_back({"ramp-v", make_ramp(128, 128, 0, 1)});
  return v;
}

std::vector<NamedFrame> coding_corpus() {
  std::vector<NamedFrame> v;
  v.push_back({"grating-h", make_grating(128, 128, 2, 0, 12, 72)});
  v.push_back({"grating-d", make_grating(128, 128, 2, 3, 14, 64)});
  v.push_back({"noisy-grating-h", make_noisy_grating(128, 128, 1, 0, 20, 48, 14, 301)});
  v.push_back({"noisy-grating-d", make_noisy_grating(128, 128, -1, 2, 26, 44, 14, 302)});
  v.push_back({"natural-1", make_natural(128, 128, 2001)});
  v.push_back({"natural-2", make_natural(128, 128, 2002)});
  v.push_back({"natural-3", make_natural(128, 128, 2003)});
  v.push_back({"natural-4", make_natural(128, 128, 2004)});
  return v;
}

std::vector<NamedFrame> golden_corpus() {
  std::vector<NamedFrame> v;
  v.push_back({"golden-grating", make_noisy_grating(128, 128, 2, 1, 22, 56, 12, 901)});
  v.push_back({"golden-natural", make_natural(128, 128, 7001)});
  v.push_back({"golden-dome", make_dome(128, 128)});
  return v;
}

}  // namespace mrli
