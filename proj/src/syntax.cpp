#include "mrli/syntax.h"

#include <algorithm>
#include <map>
#include <mutex>

#include "mrli/intra.h"

namespace mrli {

void encode_line_index(int m, uint8_t line_mode, BitWriter& writer) {
  const std::vector<int> lines = lines_in_mask(line_mode);
  const auto it = std::find(lines.begin(), lines.end(), m);
  if (it == lines.end()) {
    throw CodecError("line L" + std::to_string(m) + " not in alphabet " +
                     line_mode_name(line_mode));
  }
  const int index = static_cast<int>(it - lines.begin());
  const int last = static_cast<int>(lines.size()) - 1;
  for (int i = 0; i < index; ++i) writer.put_bit(1);
  if (index < last) writer.put_bit(0);
}

int decode_line_index(BitReader& reader, uint8_t line_mode) {
  const std::vector<int> lines = lines_in_mask(line_mode);
  const int last = static_cast<int>(lines.size()) - 1;
  int index = 0;
  while (index < last && reader.get_bit() == 1) ++index;
  return lines[index];
}

std::array<int, 3> derive_mpm_list(int left_mode, int above_mode) {
  const int left = left_mode < 0 ? kModeDc : left_mode;
  const int above = above_mode < 0 ? kModeDc : above_mode;
  if (left == above) {
    if (left < 2) return {kModePlanar, kModeDc, kModeVer};
    return {left, 2 + ((left + 29) % 32), 2 + ((left - 2 + 1) % 32)};
  }
  int third;
  if (left != kModePlanar && above != kModePlanar) {
    third = kModePlanar;
  } else if (left != kModeDc && above != kModeDc) {
    third = kModeDc;
  } else {
    third = kModeVer;
  }
  return {left, above, third};
}

void encode_mode(int mode, const std::array<int, 3>& mpm_list,
                 BitWriter& writer) {
  for (int i = 0; i < 3; ++i) {
    if (mode == mpm_list[i]) {
      writer.put_bit(1);
      if (i == 0) {
        writer.put_bit(0);
      } else {
        writer.put_bit(1);
        writer.put_bit(i - 1);
      }
      return;
    }
  }
  writer.put_bit(0);
  // Rank among the 32 non-MPM modes in ascending order.
  int rank = mode;
  for (int m : mpm_list) {
    if (m < mode) --rank;
  }
  writer.put_bits(static_cast<uint32_t>(rank), 5);
}

int decode_mode(BitReader& reader, const std::array<int, 3>& mpm_list) {
  if (reader.get_bit()) {
    if (reader.get_bit() == 0) return mpm_list[0];
    return mpm_list[1 + reader.get_bit()];
  }
  const int rank = static_cast<int>(reader.get_bits(5));
  std::array<int, 3> sorted = mpm_list;
  std::sort(sorted.begin(), sorted.end());
  int mode = rank;
  for (int m : sorted) {
    if (m <= mode) ++mode;
  }
  if (mode >= kNumIntraModes) throw CodecError("decoded mode out of range");
  return mode;
}

const std::vector<int>& diagonal_scan(int n) {
  static std::mutex mutex;
  static std::map<int, std::vector<int>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<int> scan;
  scan.reserve(static_cast<size_t>(n) * n);
  for (int s = 0; s <= 2 * (n - 1); ++s) {
    // Up-right diagonals starting from the left/bottom edge.
    for (int y = std::min(s, n - 1); y >= 0 && s - y < n; --y) {
      scan.push_back(y * n + (s - y));
    }
  }
  return cache.emplace(n, std::move(scan)).first->second;
}

namespace {

int adaptive_golomb_order(const CoeffBlock& block, int nsig) {
  int64_t sum_abs = 0;
  for (int16_t v : block.levels) sum_abs += std::abs(v);
  const int64_t mean = sum_abs / std::max(nsig, 1);
  int k = 0;
  while (k < 3 && (int64_t{2} << k) <= mean) ++k;
  return k;
}

}  // namespace

void encode_levels(const CoeffBlock& block, BitWriter& writer) {
  const auto& scan = diagonal_scan(block.n);
  int nsig = 0;
  for (int16_t v : block.levels) nsig += v != 0;
  if (nsig == 0) {
    writer.put_bit(0);
    return;
  }
  writer.put_bit(1);
  writer.put_exp_golomb(static_cast<uint32_t>(nsig - 1), 0);
  const int k = adaptive_golomb_order(block, nsig);
  writer.put_bits(static_cast<uint32_t>(k), 2);
  int run = 0;
  for (int pos : scan) {
    const int v = block.levels[pos];
    if (v == 0) {
      ++run;
      continue;
    }
    writer.put_exp_golomb(static_cast<uint32_t>(run), 0);
    writer.put_exp_golomb(static_cast<uint32_t>(std::abs(v) - 1), k);
    writer.put_bit(v < 0);
    run = 0;
  }
}

CoeffBlock decode_levels(BitReader& reader, int n, int qp, bool is_dst) {
  CoeffBlock block;
  block.n = n;
  block.qp = qp;
  block.is_dst = is_dst;
  block.levels.assign(static_cast<size_t>(n) * n, 0);
  if (reader.get_bit() == 0) return block;
  const auto& scan = diagonal_scan(n);
  const int nsig = static_cast<int>(reader.get_exp_golomb(0)) + 1;
  if (nsig > n * n) {
    throw CodecError("too many coefficients at bit " +
                     std::to_string(reader.bit_position()));
  }
  const int k = static_cast<int>(reader.get_bits(2));
  int scan_pos = 0;
  for (int c = 0; c < nsig; ++c) {
    const int run = static_cast<int>(reader.get_exp_golomb(0));
    scan_pos += run;
    if (scan_pos >= n * n) {
      throw CodecError("coefficient run overflows block at bit " +
                       std::to_string(reader.bit_position()));
    }
    const int mag = static_cast<int>(reader.get_exp_golomb(k)) + 1;
    const bool negative = reader.get_bit() != 0;
    block.levels[scan[scan_pos]] =
        static_cast<int16_t>(negative ? -mag : mag);
    ++scan_pos;
  }
  return block;
}

}  // namespace mrli
