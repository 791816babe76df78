#pragma once

#include <array>

#include "mrli/bitstream.h"
#include "mrli/transform.h"

namespace mrli {

// Truncated-unary reference line index over the enabled alphabet:
// full4 codes L0..L3 as 0, 10, 110, 111; fast3 codes L0, L1, L3 as
// 0, 10, 11; a single-line alphabet costs no bits.
void encode_line_index(int m, uint8_t line_mode, BitWriter& writer);
int decode_line_index(BitReader& reader, uint8_t line_mode);

// 3-entry most-probable-mode list from the left and above modes
// (pass -1 for an unavailable neighbor).
std::array<int, 3> derive_mpm_list(int left_mode, int above_mode);

// 1 flag bit, then 1-2 bits into the MPM list on a hit or 5 fixed bits
// over the remaining 32 modes in ascending order on a miss.
void encode_mode(int mode, const std::array<int, 3>& mpm_list,
                 BitWriter& writer);
int decode_mode(BitReader& reader, const std::array<int, 3>& mpm_list);

// Coded-block flag, then diagonal-scan run lengths and magnitudes in
// exp-Golomb with a per-block adaptive magnitude order, signs as raw bits.
void encode_levels(const CoeffBlock& block, BitWriter& writer);
CoeffBlock decode_levels(BitReader& reader, int n, int qp, bool is_dst);

// Diagonal (anti-diagonal) scan: raster positions in coding order.
const std::vector<int>& diagonal_scan(int n);

}  // namespace mrli
