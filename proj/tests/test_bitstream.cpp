#include <doctest.h>

#include <random>

#include "mrli/coding.h"

using namespace mrli;

namespace {

std::string bits_of(const BitWriter& w) {
  std::string s;
  const auto& bytes = w.bytes();
  for (uint64_t i = 0; i < w.bit_count(); ++i) {
    s += (bytes[i / 8] >> (7 - i % 8)) & 1 ? '1' : '0';
  }
  return s;
}

std::string line_code(int m, uint8_t mask) {
  BitWriter w;
  encode_line_index(m, mask, w);
  return bits_of(w);
}

}  // namespace

TEST_CASE("bit writer and reader round trip") {
  std::mt19937 rng(61);
  BitWriter w;
  std::vector<std::pair<uint32_t, int>> ops;
  for (int i = 0; i < 200; ++i) {
    const int count = 1 + static_cast<int>(rng() % 24);
    const uint32_t value = rng() & ((count == 32 ? ~0u : (1u << count) - 1));
    ops.emplace_back(value, count);
    w.put_bits(value, count);
  }
  BitWriter counter(true);
  for (auto [value, count] : ops) counter.put_bits(value, count);
  CHECK(counter.bit_count() == w.bit_count());
  w.byte_align();
  BitReader r(w.bytes().data(), w.bytes().size());
  for (auto [value, count] : ops) CHECK(r.get_bits(count) == value);
}

TEST_CASE("exp-Golomb round trip at several orders") {
  for (int k = 0; k < 4; ++k) {
    BitWriter w;
    for (uint32_t v = 0; v < 80; ++v) w.put_exp_golomb(v, k);
    w.put_exp_golomb(100000, k);
    w.byte_align();
    BitReader r(w.bytes().data(), w.bytes().size());
    for (uint32_t v = 0; v < 80; ++v) CHECK(r.get_exp_golomb(k) == v);
    CHECK(r.get_exp_golomb(k) == 100000);
  }
  BitWriter w;
  w.put_exp_golomb(0, 0);
  CHECK(w.bit_count() == 1);
}

TEST_CASE("reading past the end throws") {
  const uint8_t byte = 0xff;
  BitReader r(&byte, 1);
  r.get_bits(8);
  CHECK_THROWS_AS(r.get_bit(), CodecError);
}

TEST_CASE("header round trip and validation") {
  BitstreamHeader h;
  h.width = 176;
  h.height = 144;
  h.bit_depth = 10;
  h.qp = 37;
  h.lossless = true;
  h.line_mode = kLineModeFast3;
  h.frame_count = 5;
  h.wide_horizontal_range = true;
  std::vector<uint8_t> bytes = serialize_header(h);
  CHECK(bytes.size() == kHeaderBytes);
  const BitstreamHeader back = parse_header(bytes.data(), bytes.size());
  CHECK(back.width == 176);
  CHECK(back.height == 144);
  CHECK(back.bit_depth == 10);
  CHECK(back.qp == 37);
  CHECK(back.lossless);
  CHECK(back.line_mode == kLineModeFast3);
  CHECK(back.frame_count == 5);
  CHECK(back.wide_horizontal_range);

  std::vector<uint8_t> bad = bytes;
  bad[0] = 'X';
  CHECK_THROWS_AS(parse_header(bad.data(), bad.size()), CodecError);
  bad = bytes;
  bad[4] = 2;
  CHECK_THROWS_AS(parse_header(bad.data(), bad.size()), CodecError);
  bad = bytes;
  bad[5] = 12;
  CHECK_THROWS_AS(parse_header(bad.data(), bad.size()), CodecError);
  bad = bytes;
  bad[6] = 0x02;  // alphabet without L0
  CHECK_THROWS_AS(parse_header(bad.data(), bad.size()), CodecError);
  CHECK_THROWS_AS(parse_header(bytes.data(), 10), CodecError);
}

TEST_CASE("line alphabets") {
  CHECK(lines_in_mask(kLineModeFull4) == std::vector<int>{0, 1, 2, 3});
  CHECK(lines_in_mask(kLineModeFast3) == std::vector<int>{0, 1, 3});
  CHECK(lines_in_mask(kLineModeSingle) == std::vector<int>{0});
  CHECK(line_mode_name(0x05) == "subset{L0,L2}");
  CHECK(line_mode_from_name("full4") == kLineModeFull4);
  CHECK_THROWS_AS(line_mode_from_name("dual"), CodecError);
}

TEST_CASE("line index codes are the truncated-unary words") {
  CHECK(line_code(0, kLineModeFull4) == "0");
  CHECK(line_code(1, kLineModeFull4) == "10");
  CHECK(line_code(2, kLineModeFull4) == "110");
  CHECK(line_code(3, kLineModeFull4) == "111");
  CHECK(line_code(0, kLineModeFast3) == "0");
  CHECK(line_code(1, kLineModeFast3) == "10");
  CHECK(line_code(3, kLineModeFast3) == "11");
  CHECK(line_code(0, kLineModeSingle).empty());
  BitWriter w;
  CHECK_THROWS_AS(encode_line_index(2, kLineModeFast3, w), CodecError);
}

TEST_CASE("line index codes decode and are prefix free") {
  for (uint8_t mask : {kLineModeFull4, kLineModeFast3, uint8_t{0x07}}) {
    std::vector<std::string> words;
    for (int m : lines_in_mask(mask)) {
      BitWriter w;
      encode_line_index(m, mask, w);
      w.byte_align();
      BitReader r(w.bytes().data(), w.bytes().size());
      CHECK(decode_line_index(r, mask) == m);
      words.push_back(line_code(m, mask));
    }
    for (size_t a = 0; a < words.size(); ++a) {
      for (size_t b = 0; b < words.size(); ++b) {
        if (a == b) continue;
        CHECK(words[b].rfind(words[a], 0) != 0);  // no word prefixes another
      }
    }
  }
}

TEST_CASE("most probable mode list") {
  CHECK(derive_mpm_list(-1, -1) == std::array<int, 3>{0, 1, 26});
  CHECK(derive_mpm_list(1, 1) == std::array<int, 3>{0, 1, 26});
  CHECK(derive_mpm_list(26, 26) == std::array<int, 3>{26, 25, 27});
  CHECK(derive_mpm_list(2, 2) == std::array<int, 3>{2, 33, 3});
  CHECK(derive_mpm_list(34, 34) == std::array<int, 3>{34, 33, 3});
  CHECK(derive_mpm_list(10, 26) == std::array<int, 3>{10, 26, 0});
  CHECK(derive_mpm_list(0, 26) == std::array<int, 3>{0, 26, 1});
  CHECK(derive_mpm_list(0, 1) == std::array<int, 3>{0, 1, 26});
}

TEST_CASE("mode coding lengths and round trip") {
  const std::array<int, 3> mpm{10, 26, 0};
  BitWriter hit;
  encode_mode(10, mpm, hit);
  CHECK(bits_of(hit) == "10");
  BitWriter second;
  encode_mode(26, mpm, second);
  CHECK(second.bit_count() == 3);
  BitWriter miss;
  encode_mode(30, mpm, miss);
  CHECK(miss.bit_count() == 6);

  std::mt19937 rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    const std::array<int, 3> list = derive_mpm_list(
        static_cast<int>(rng() % 35), static_cast<int>(rng() % 35));
    for (int mode = 0; mode < kNumIntraModes; ++mode) {
      BitWriter w;
      encode_mode(mode, list, w);
      w.byte_align();
      BitReader r(w.bytes().data(), w.bytes().size());
      REQUIRE(decode_mode(r, list) == mode);
    }
  }
}

TEST_CASE("diagonal scan order") {
  const std::vector<int>& scan = diagonal_scan(4);
  CHECK(scan.size() == 16);
  CHECK(scan[0] == 0);
  CHECK(scan[1] == 4);   // (x=0, y=1)
  CHECK(scan[2] == 1);   // (x=1, y=0)
  CHECK(scan[3] == 8);
  CHECK(scan[4] == 5);
  CHECK(scan[5] == 2);
  CHECK(scan[15] == 15);
  std::vector<int> seen(16, 0);
  for (int p : scan) ++seen[p];
  for (int c : seen) CHECK(c == 1);
}

TEST_CASE("level coding round trip") {
  std::mt19937 rng(63);
  for (int n : {4, 8, 16, 32}) {
    for (int density : {0, 5, 30, 100}) {
      CoeffBlock block;
      block.n = n;
      block.qp = 27;
      block.is_dst = n == 4;
      block.levels.assign(static_cast<size_t>(n) * n, 0);
      for (auto& v : block.levels) {
        if (static_cast<int>(rng() % 100) < density) {
          v = static_cast<int16_t>(static_cast<int>(rng() % 400) - 200);
        }
      }
      BitWriter w;
      encode_levels(block, w);
      w.byte_align();
      BitReader r(w.bytes().data(), w.bytes().size());
      const CoeffBlock back = decode_levels(r, n, 27, block.is_dst);
      REQUIRE(back.levels == block.levels);
    }
  }
}

TEST_CASE("an all-zero block costs one bit") {
  CoeffBlock block;
  block.n = 8;
  block.levels.assign(64, 0);
  BitWriter w;
  encode_levels(block, w);
  CHECK(w.bit_count() == 1);
}

TEST_CASE("adding coefficients never reduces the level bits") {
  std::mt19937 rng(64);
  CoeffBlock sparse;
  sparse.n = 8;
  sparse.levels.assign(64, 0);
  sparse.levels[0] = 5;
  sparse.levels[9] = -2;
  CoeffBlock dense = sparse;
  dense.levels[3] = 7;
  dense.levels[17] = 1;
  BitWriter ws, wd;
  encode_levels(sparse, ws);
  encode_levels(dense, wd);
  CHECK(wd.bit_count() >= ws.bit_count());
}

TEST_CASE("counting mode matches the written length for level coding") {
  std::mt19937 rng(65);
  CoeffBlock block;
  block.n = 16;
  block.levels.assign(256, 0);
  for (auto& v : block.levels) {
    if (rng() % 4 == 0) v = static_cast<int16_t>(static_cast<int>(rng() % 30) - 15);
  }
  BitWriter w, counter(true);
  encode_levels(block, w);
  encode_levels(block, counter);
  CHECK(w.bit_count() == counter.bit_count());
}

TEST_CASE("cheapest possible CU costs six bits") {
  // 8x8 leaf, single-line alphabet, first most-probable mode, no residual
  // anywhere: one partition bit, two mode bits, three coded-block flags.
  CodingState state(64, 64, 8);
  CuData cu;
  cu.x = 0;
  cu.y = 0;
  cu.size = 8;
  cu.line = 0;
  cu.modes[0] = mpm_list_at(state, 0, 0)[0];
  cu.luma_tus.push_back(CoeffBlock{8, 32, false, std::vector<int16_t>(64, 0)});
  cu.cb_tu = CoeffBlock{4, 32, false, std::vector<int16_t>(16, 0)};
  cu.cr_tu = CoeffBlock{4, 32, false, std::vector<int16_t>(16, 0)};
  BitWriter w;
  write_cu_syntax(cu, state, kLineModeSingle, w);
  CHECK(w.bit_count() == 6);
}
