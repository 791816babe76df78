#include "mrli/satd.h"

#include <cstdlib>

namespace mrli {

namespace {

uint64_t hadamard4(const Sample* a, int sa, const Sample* b, int sb) {
  int d[16];
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) {
      d[y * 4 + x] = int{a[y * sa + x]} - int{b[y * sb + x]};
    }
  }
  int m[16];
  for (int y = 0; y < 4; ++y) {
    const int* r = &d[y * 4];
    const int s0 = r[0] + r[3], s1 = r[1] + r[2];
    const int t0 = r[0] - r[3], t1 = r[1] - r[2];
    m[y * 4 + 0] = s0 + s1;
    m[y * 4 + 1] = s0 - s1;
    m[y * 4 + 2] = t0 + t1;
    m[y * 4 + 3] = t0 - t1;
  }
  uint64_t sum = 0;
  for (int x = 0; x < 4; ++x) {
    const int s0 = m[0 * 4 + x] + m[3 * 4 + x];
    const int s1 = m[1 * 4 + x] + m[2 * 4 + x];
    const int t0 = m[0 * 4 + x] - m[3 * 4 + x];
    const int t1 = m[1 * 4 + x] - m[2 * 4 + x];
    sum += std::abs(s0 + s1) + std::abs(s0 - s1) + std::abs(t0 + t1) +
           std::abs(t0 - t1);
  }
  return (sum + 1) >> 1;
}

uint64_t hadamard8(const Sample* a, int sa, const Sample* b, int sb) {
  int d[64];
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      d[y * 8 + x] = int{a[y * sa + x]} - int{b[y * sb + x]};
    }
  }
  auto butterfly8 = [](int* v, int stride) {
    for (int pass = 1; pass <= 4; pass <<= 1) {
      for (int base = 0; base < 8; base += 2 * pass) {
        for (int off = 0; off < pass; ++off) {
          const int i = (base + off) * stride;
          const int j = (base + off + pass) * stride;
          const int p = v[i], q = v[j];
          v[i] = p + q;
          v[j] = p - q;
        }
      }
    }
  };
  for (int y = 0; y < 8; ++y) butterfly8(&d[y * 8], 1);
  for (int x = 0; x < 8; ++x) butterfly8(&d[x], 8);
  uint64_t sum = 0;
  for (int i = 0; i < 64; ++i) sum += std::abs(d[i]);
  return (sum + 2) >> 2;
}

}  // namespace

uint64_t satd(const Sample* a, int stride_a, const Sample* b, int stride_b,
              int n) {
  if (n == 4) return hadamard4(a, stride_a, b, stride_b);
  assert(n % 8 == 0);
  uint64_t sum = 0;
  for (int y = 0; y < n; y += 8) {
    for (int x = 0; x < n; x += 8) {
      sum += hadamard8(a + y * stride_a + x, stride_a, b + y * stride_b + x,
                       stride_b);
    }
  }
  return sum;
}

uint64_t sse(const Sample* a, int stride_a, const Sample* b, int stride_b,
             int w, int h) {
  uint64_t sum = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int64_t d = int64_t{a[y * stride_a + x]} - b[y * stride_b + x];
      sum += static_cast<uint64_t>(d * d);
    }
  }
  return sum;
}

}  // namespace mrli
