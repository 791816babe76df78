#include "mrli/transform.h"

#include <array>
#include <cmath>

namespace mrli {

namespace {

// Odd-row magnitude sets of the HEVC core transform, one per size. The
// value for row k, column i follows from folding (2i+1)k over the cosine
// period; even rows nest the next-smaller transform.
const int kOdd4[2] = {83, 36};
const int kOdd8[4] = {89, 75, 50, 18};
const int kOdd16[8] = {90, 87, 80, 70, 57, 43, 25, 9};
const int kOdd32[16] = {90, 90, 88, 85, 82, 78, 73, 67,
                        61, 54, 46, 38, 31, 22, 13, 4};

const int kDst4[4][4] = {{29, 55, 74, 84},
                         {74, 74, 0, -74},
                         {84, -29, -74, 55},
                         {55, -84, 74, -29}};

struct Tables {
  std::vector<int> t4, t8, t16, t32;

  Tables() {
    t4 = build(4, kOdd4);
    t8 = build(8, kOdd8);
    t16 = build(16, kOdd16);
    t32 = build(32, kOdd32);
  }

  static std::vector<int> build(int n, const int* odd) {
    std::vector<int> t(static_cast<size_t>(n) * n);
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        if (k == 0) {
          t[i] = 64;
        } else if (k % 2 == 1) {
          int a = ((2 * i + 1) * k) % (4 * n);
          int s = 1;
          if (a >= 2 * n) {
            a -= 2 * n;
            s = -s;
          }
          if (a > n) {
            a = 2 * n - a;
            s = -s;
          }
          t[static_cast<size_t>(k) * n + i] = s * odd[(a - 1) / 2];
        }
      }
    }
    // Even rows from the half-size transform, symmetric halves.
    if (n > 2) {
      const int* half_odd = n == 32 ? kOdd16 : (n == 16 ? kOdd8 : kOdd4);
      std::vector<int> sub =
          n == 4 ? std::vector<int>{64, 64, 64, -64} : build(n / 2, half_odd);
      for (int k = 2; k < n; k += 2) {
        for (int i = 0; i < n / 2; ++i) {
          const int v = sub[static_cast<size_t>(k / 2) * (n / 2) + i];
          t[static_cast<size_t>(k) * n + i] = v;
          t[static_cast<size_t>(k) * n + (n - 1 - i)] = v;
        }
      }
    }
    return t;
  }
};

const int* dct_table(int n) {
  static const Tables tables;
  switch (n) {
    case 4: return tables.t4.data();
    case 8: return tables.t8.data();
    case 16: return tables.t16.data();
    case 32: return tables.t32.data();
    default: throw CodecError("unsupported transform size " + std::to_string(n));
  }
}

// out[k][j] = (sum_i T[k][i] * in[j][i] + add) >> shift
void forward_pass(const int* t, int n, const int32_t* in, int32_t* out,
                  int shift) {
  const int64_t add = int64_t{1} << (shift - 1);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      int64_t sum = 0;
      for (int i = 0; i < n; ++i) {
        sum += int64_t{t[k * n + i]} * in[j * n + i];
      }
      out[k * n + j] = static_cast<int32_t>((sum + add) >> shift);
    }
  }
}

// out[j][i] = clip16((sum_k T[k][i] * in[k][j] + add) >> shift)
void inverse_pass(const int* t, int n, const int32_t* in, int32_t* out,
                  int shift) {
  const int64_t add = int64_t{1} << (shift - 1);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      int64_t sum = 0;
      for (int k = 0; k < n; ++k) {
        sum += int64_t{t[k * n + i]} * in[k * n + j];
      }
      out[j * n + i] = static_cast<int32_t>(
          std::clamp<int64_t>((sum + add) >> shift, -32768, 32767));
    }
  }
}

const int* table_for(int n, bool use_dst) {
  if (use_dst) {
    if (n != 4) throw CodecError("DST only defined for 4x4");
    return &kDst4[0][0];
  }
  return dct_table(n);
}

const int kQuantScales[6] = {26214, 23302, 20560, 18396, 16384, 14564};
const int kInvQuantScales[6] = {40, 45, 51, 57, 64, 72};

}  // namespace

std::vector<int32_t> forward_transform(const std::vector<int32_t>& residual,
                                       int n, bool use_dst, int bit_depth) {
  assert(static_cast<int>(residual.size()) == n * n);
  const int* t = table_for(n, use_dst);
  const int log2n = log2_size(n);
  const int shift1 = log2n + bit_depth - 9;
  const int shift2 = log2n + 6;
  std::vector<int32_t> tmp(residual.size());
  std::vector<int32_t> out(residual.size());
  forward_pass(t, n, residual.data(), tmp.data(), shift1);
  forward_pass(t, n, tmp.data(), out.data(), shift2);
  return out;
}

std::vector<int32_t> inverse_transform(const std::vector<int32_t>& coeffs,
                                       int n, bool use_dst, int bit_depth) {
  assert(static_cast<int>(coeffs.size()) == n * n);
  const int* t = table_for(n, use_dst);
  const int shift1 = 7;
  const int shift2 = 12 - (bit_depth - 8);
  std::vector<int32_t> tmp(coeffs.size());
  std::vector<int32_t> out(coeffs.size());
  inverse_pass(t, n, coeffs.data(), tmp.data(), shift1);
  inverse_pass(t, n, tmp.data(), out.data(), shift2);
  return out;
}

CoeffBlock quantize(const std::vector<int32_t>& coeffs, int n, int qp,
                    bool is_dst, int bit_depth) {
  if (qp < 0 || qp > 51) throw CodecError("qp out of range");
  const int log2n = log2_size(n);
  const int transform_shift = 15 - bit_depth - log2n;
  const int qbits = 14 + qp / 6 + transform_shift;
  const int scale = kQuantScales[qp % 6];
  const int64_t dead_zone = int64_t{171} << (qbits - 9);
  CoeffBlock block;
  block.n = n;
  block.qp = qp;
  block.is_dst = is_dst;
  block.levels.resize(coeffs.size());
  for (size_t i = 0; i < coeffs.size(); ++i) {
    const int64_t mag = (std::abs(int64_t{coeffs[i]}) * scale + dead_zone) >> qbits;
    const int64_t level = coeffs[i] < 0 ? -mag : mag;
    block.levels[i] =
        static_cast<int16_t>(std::clamp<int64_t>(level, -32768, 32767));
  }
  return block;
}

std::vector<int32_t> dequantize(const CoeffBlock& block, int bit_depth) {
  const int log2n = log2_size(block.n);
  const int transform_shift = 15 - bit_depth - log2n;
  const int shift = 20 - 14 - transform_shift;
  const int64_t scale = int64_t{kInvQuantScales[block.qp % 6]}
                        << (block.qp / 6);
  const int64_t add = int64_t{1} << (shift - 1);
  std::vector<int32_t> coeffs(block.levels.size());
  for (size_t i = 0; i < coeffs.size(); ++i) {
    coeffs[i] = static_cast<int32_t>(std::clamp<int64_t>(
        (block.levels[i] * scale + add) >> shift, -32768, 32767));
  }
  return coeffs;
}

std::vector<int32_t> reconstruct_residual(const CoeffBlock& block,
                                          int bit_depth) {
  return inverse_transform(dequantize(block, bit_depth), block.n,
                           block.is_dst, bit_depth);
}

double quant_step_size(int qp, int n, int bit_depth) {
  const int log2n = log2_size(n);
  const int transform_shift = 15 - bit_depth - log2n;
  const int qbits = 14 + qp / 6 + transform_shift;
  return std::ldexp(1.0, qbits) / kQuantScales[qp % 6];
}

int chroma_qp_from_luma(int luma_qp) {
  static const int kMap[] = {29, 30, 31, 32, 33, 33, 34, 34, 35,
                             35, 36, 36, 37, 37, 38, 38};  // qp 30..45
  if (luma_qp < 30) return luma_qp;
  if (luma_qp <= 45) return kMap[luma_qp - 30];
  return luma_qp - 6;
}

}  // namespace mrli
