#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mrli/common.h"

namespace mrli {

// MSB-first bit writer. In counting mode no bytes are stored, only the
// exact bit count is tracked through the identical code path.
class BitWriter {
 public:
  explicit BitWriter(bool counting_only = false) : counting_(counting_only) {}

  void put_bit(int bit) {
    if (!counting_) {
      if (nbits_ % 8 == 0) bytes_.push_back(0);
      if (bit) bytes_.back() |= static_cast<uint8_t>(0x80 >> (nbits_ % 8));
    }
    ++nbits_;
  }
  void put_bits(uint32_t value, int count) {
    for (int i = count - 1; i >= 0; --i) put_bit((value >> i) & 1);
  }
  // Order-k exponential Golomb, value >= 0.
  void put_exp_golomb(uint32_t value, int k);

  void byte_align() {
    while (nbits_ % 8 != 0) put_bit(0);
  }
  uint64_t bit_count() const { return nbits_; }
  const std::vector<uint8_t>& bytes() const {
    assert(!counting_);
    return bytes_;
  }

 private:
  bool counting_;
  uint64_t nbits_ = 0;
  std::vector<uint8_t> bytes_;
};

class BitReader {
 public:
  BitReader(const uint8_t* data, size_t size) : data_(data), size_(size) {}

  int get_bit() {
    if (pos_ >= size_ * 8) {
      throw CodecError("bitstream exhausted at bit " + std::to_string(pos_));
    }
    const int bit = (data_[pos_ / 8] >> (7 - pos_ % 8)) & 1;
    ++pos_;
    return bit;
  }
  uint32_t get_bits(int count) {
    uint32_t v = 0;
    for (int i = 0; i < count; ++i) v = (v << 1) | get_bit();
    return v;
  }
  uint32_t get_exp_golomb(int k);

  void byte_align() {
    while (pos_ % 8 != 0) ++pos_;
  }
  uint64_t bit_position() const { return pos_; }

 private:
  const uint8_t* data_;
  size_t size_;
  uint64_t pos_ = 0;
};

// Reference-line alphabets as bit masks over {L0..L3}; bit 0 is always set.
constexpr uint8_t kLineModeSingle = 0x01;
constexpr uint8_t kLineModeFull4 = 0x0F;
constexpr uint8_t kLineModeFast3 = 0x0B;  // {L0, L1, L3}

std::vector<int> lines_in_mask(uint8_t mask);
std::string line_mode_name(uint8_t mask);
uint8_t line_mode_from_name(const std::string& name);

struct BitstreamHeader {
  static constexpr uint32_t kMagic = 0x4d524c49;  // "MRLI"
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  int qp = 32;
  bool lossless = false;
  uint8_t line_mode = kLineModeSingle;
  int frame_count = 1;
  bool wide_horizontal_range = false;
};

constexpr size_t kHeaderBytes = 32;

std::vector<uint8_t> serialize_header(const BitstreamHeader& header);
BitstreamHeader parse_header(const uint8_t* data, size_t size);

std::vector<uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, const std::vector<uint8_t>& data);

}  // namespace mrli
