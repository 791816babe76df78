#include <doctest.h>

#include <fstream>
#include <random>

#include "mrli/frame.h"
#include "test_util.h"

using namespace mrli;

namespace {

Frame random_frame(std::mt19937& rng, int w, int h, int bd) {
  Frame f(w, h, bd);
  std::uniform_int_distribution<int> dist(0, (1 << bd) - 1);
  for (auto& plane : f.planes) {
    for (auto& s : plane.samples) s = static_cast<Sample>(dist(rng));
  }
  return f;
}

bool frames_equal(const Frame& a, const Frame& b) {
  if (!a.same_geometry(b)) return false;
  for (int p = 0; p < 3; ++p) {
    if (a.plane(p).samples != b.plane(p).samples) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("frame geometry validation") {
  CHECK_THROWS_AS(Frame(12, 16, 8), CodecError);
  CHECK_THROWS_AS(Frame(16, 16, 9), CodecError);
  CHECK_THROWS_AS(Frame(0, 8, 8), CodecError);
  Frame f(16, 8, 8);
  CHECK(f.plane(kPlaneCb).width == 8);
  CHECK(f.plane(kPlaneCb).height == 4);
}

TEST_CASE("yuv frame byte size") {
  CHECK(yuv_frame_bytes(8, 8, 8) == 96);
  CHECK(yuv_frame_bytes(8, 8, 10) == 192);
  CHECK(yuv_frame_bytes(128, 64, 8) == 12288);
}

TEST_CASE("yuv file round trip, 8 and 10 bit, two frames") {
  std::mt19937 rng(11);
  for (int bd : {8, 10}) {
    const std::string path = temp_path("roundtrip.yuv");
    const Frame f0 = random_frame(rng, 32, 16, bd);
    const Frame f1 = random_frame(rng, 32, 16, bd);
    write_yuv(f0, path, false);
    write_yuv(f1, path, true);
    CHECK(frames_equal(load_yuv(path, 32, 16, bd, 0), f0));
    CHECK(frames_equal(load_yuv(path, 32, 16, bd, 1), f1));
    CHECK_THROWS_AS(load_yuv(path, 32, 16, bd, 2), CodecError);
    std::remove(path.c_str());
  }
}

TEST_CASE("truncated yuv reports byte counts") {
  const std::string path = temp_path("short.yuv");
  {
    std::ofstream out(path, std::ios::binary);
    std::vector<char> buf(95, 0);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
  try {
    load_yuv(path, 8, 8, 8, 0);
    FAIL("expected a truncation error");
  } catch (const CodecError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("95") != std::string::npos);
    CHECK(msg.find("96") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("padding replicates edges and crop restores") {
  std::mt19937 rng(12);
  const Frame f = random_frame(rng, 24, 16, 8);
  const Frame padded = pad_to_multiple(f, 64);
  CHECK(padded.width == 64);
  CHECK(padded.height == 64);
  const Plane& y = padded.plane(kPlaneY);
  CHECK(y.at(63, 10) == f.plane(kPlaneY).at(23, 10));
  CHECK(y.at(10, 63) == f.plane(kPlaneY).at(10, 15));
  CHECK(y.at(63, 63) == f.plane(kPlaneY).at(23, 15));
  CHECK(frames_equal(crop(padded, 24, 16), f));
}

TEST_CASE("block view indexing and bounds") {
  Frame f(16, 16, 8);
  Plane& y = f.plane(kPlaneY);
  for (int j = 0; j < 16; ++j) {
    for (int i = 0; i < 16; ++i) {
      y.at(i, j) = static_cast<Sample>(i + 16 * j);
    }
  }
  const BlockView view(f, BlockRegion{kPlaneY, 0, 0, 4});
  CHECK(view.at(3, 2) == 35);
  CHECK(view.size() == 4);
  CHECK_THROWS_AS(BlockView(f, BlockRegion{kPlaneY, 12, 12, 8}), CodecError);
}
