#include "mrli/bitstream.h"

#include <fstream>

namespace mrli {

void BitWriter::put_exp_golomb(uint32_t value, int k) {
  const uint64_t v = (uint64_t{value} >> k) + 1;
  int len = 0;
  while ((uint64_t{1} << (len + 1)) <= v) ++len;
  for (int i = 0; i < len; ++i) put_bit(0);
  put_bit(1);
  for (int i = len - 1; i >= 0; --i) put_bit((v >> i) & 1);
  put_bits(value & ((1u << k) - 1), k);
}

uint32_t BitReader::get_exp_golomb(int k) {
  int len = 0;
  while (get_bit() == 0) {
    if (++len > 32) throw CodecError("malformed exp-Golomb code");
  }
  uint64_t v = 1;
  for (int i = 0; i < len; ++i) v = (v << 1) | get_bit();
  uint64_t value = (v - 1) << k;
  if (k > 0) value |= get_bits(k);
  return static_cast<uint32_t>(value);
}

std::vector<int> lines_in_mask(uint8_t mask) {
  std::vector<int> lines;
  for (int m = 0; m < 4; ++m) {
    if (mask & (1 << m)) lines.push_back(m);
  }
  return lines;
}

std::string line_mode_name(uint8_t mask) {
  switch (mask) {
    case kLineModeSingle: return "single";
    case kLineModeFull4: return "full4";
    case kLineModeFast3: return "fast3";
    default: {
      std::string s = "subset{";
      for (int m : lines_in_mask(mask)) s += "L" + std::to_string(m) + ",";
      s.back() = '}';
      return s;
    }
  }
}

uint8_t line_mode_from_name(const std::string& name) {
  if (name == "single") return kLineModeSingle;
  if (name == "full4") return kLineModeFull4;
  if (name == "fast3") return kLineModeFast3;
  throw CodecError("unknown line mode '" + name + "'");
}

static void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(v & 0xff);
  out.push_back((v >> 8) & 0xff);
  out.push_back((v >> 16) & 0xff);
  out.push_back((v >> 24) & 0xff);
}

static uint32_t get_u32(const uint8_t* p) {
  return p[0] | (p[1] << 8) | (uint32_t{p[2]} << 16) | (uint32_t{p[3]} << 24);
}

std::vector<uint8_t> serialize_header(const BitstreamHeader& header) {
  std::vector<uint8_t> out;
  out.push_back('M');
  out.push_back('R');
  out.push_back('L');
  out.push_back('I');
  out.push_back(1);  // version
  out.push_back(static_cast<uint8_t>(header.bit_depth));
  out.push_back(header.line_mode);
  out.push_back(header.lossless ? 1 : 0);
  put_u32(out, static_cast<uint32_t>(header.width));
  put_u32(out, static_cast<uint32_t>(header.height));
  put_u32(out, static_cast<uint32_t>(header.qp));
  put_u32(out, static_cast<uint32_t>(header.frame_count));
  out.push_back(header.wide_horizontal_range ? 1 : 0);
  out.resize(kHeaderBytes, 0);
  return out;
}

BitstreamHeader parse_header(const uint8_t* data, size_t size) {
  if (size < kHeaderBytes) throw CodecError("stream shorter than header");
  if (data[0] != 'M' || data[1] != 'R' || data[2] != 'L' || data[3] != 'I') {
    throw CodecError("bad magic, not an MRLI stream");
  }
  if (data[4] != 1) throw CodecError("unsupported stream version");
  BitstreamHeader h;
  h.bit_depth = data[5];
  h.line_mode = data[6];
  h.lossless = data[7] != 0;
  h.width = static_cast<int>(get_u32(data + 8));
  h.height = static_cast<int>(get_u32(data + 12));
  h.qp = static_cast<int>(get_u32(data + 16));
  h.frame_count = static_cast<int>(get_u32(data + 20));
  h.wide_horizontal_range = data[24] != 0;
  if (h.bit_depth != 8 && h.bit_depth != 10) {
    throw CodecError("bad bit depth in header");
  }
  if (!(h.line_mode & 1)) throw CodecError("line mode must include L0");
  if (h.width <= 0 || h.height <= 0 || h.frame_count <= 0) {
    throw CodecError("bad dimensions in header");
  }
  return h;
}

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CodecError("cannot open " + path);
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(in),
                              std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::vector<uint8_t>& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CodecError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
}

}  // namespace mrli
