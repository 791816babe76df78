#include "mrli/frame.h"

#include <cstdio>
#include <fstream>

namespace mrli {

Frame::Frame(int w, int h, int bd) : width(w), height(h), bit_depth(bd) {
  if (bd != 8 && bd != 10) {
    throw CodecError("unsupported bit depth " + std::to_string(bd));
  }
  if (w <= 0 || h <= 0 || w % 8 != 0 || h % 8 != 0) {
    throw CodecError("frame dimensions must be positive multiples of 8");
  }
  planes[kPlaneY] = Plane(w, h);
  planes[kPlaneCb] = Plane(w / 2, h / 2);
  planes[kPlaneCr] = Plane(w / 2, h / 2);
}

BlockView::BlockView(const Frame& frame, const BlockRegion& region)
    : plane_(&frame.plane(region.plane_id)), region_(region) {
  if (region.x < 0 || region.y < 0 || region.x + region.n > plane_->width ||
      region.y + region.n > plane_->height) {
    throw CodecError("block region outside plane bounds");
  }
}

size_t yuv_frame_bytes(int width, int height, int bit_depth) {
  const size_t luma = static_cast<size_t>(width) * height;
  const size_t total = luma + luma / 2;
  return bit_depth == 8 ? total : total * 2;
}

static void read_plane(std::ifstream& in, Plane& plane, int bit_depth) {
  const size_t count = plane.samples.size();
  if (bit_depth == 8) {
    std::vector<uint8_t> buf(count);
    in.read(reinterpret_cast<char*>(buf.data()), count);
    for (size_t i = 0; i < count; ++i) plane.samples[i] = buf[i];
  } else {
    std::vector<uint8_t> buf(count * 2);
    in.read(reinterpret_cast<char*>(buf.data()), buf.size());
    for (size_t i = 0; i < count; ++i) {
      plane.samples[i] =
          static_cast<Sample>(buf[2 * i] | (buf[2 * i + 1] << 8));
    }
  }
}

Frame load_yuv(const std::string& path, int width, int height, int bit_depth,
               int frame_index) {
  Frame frame(width, height, bit_depth);
  const size_t frame_bytes = yuv_frame_bytes(width, height, bit_depth);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CodecError("cannot open " + path);
  in.seekg(0, std::ios::end);
  const size_t file_size = static_cast<size_t>(in.tellg());
  const size_t need = frame_bytes * (static_cast<size_t>(frame_index) + 1);
  if (file_size < need) {
    throw CodecError("truncated YUV file " + path + ": have " +
                     std::to_string(file_size) + " bytes, need " +
                     std::to_string(need));
  }
  in.seekg(static_cast<std::streamoff>(frame_bytes) * frame_index);
  for (auto& plane : frame.planes) read_plane(in, plane, bit_depth);
  if (!in) throw CodecError("read error on " + path);
  const int max_val = (1 << bit_depth) - 1;
  for (auto& plane : frame.planes) {
    for (auto& s : plane.samples) {
      if (s > max_val) throw CodecError("sample exceeds bit depth in " + path);
    }
  }
  return frame;
}

static void write_plane(std::ofstream& out, const Plane& plane,
                        int bit_depth) {
  if (bit_depth == 8) {
    std::vector<uint8_t> buf(plane.samples.size());
    for (size_t i = 0; i < buf.size(); ++i) {
      buf[i] = static_cast<uint8_t>(plane.samples[i]);
    }
    out.write(reinterpret_cast<const char*>(buf.data()), buf.size());
  } else {
    std::vector<uint8_t> buf(plane.samples.size() * 2);
    for (size_t i = 0; i < plane.samples.size(); ++i) {
      buf[2 * i] = static_cast<uint8_t>(plane.samples[i] & 0xff);
      buf[2 * i + 1] = static_cast<uint8_t>(plane.samples[i] >> 8);
    }
    out.write(reinterpret_cast<const char*>(buf.data()), buf.size());
  }
}

void write_yuv(const Frame& frame, const std::string& path, bool append) {
  std::ofstream out(path, std::ios::binary |
                              (append ? std::ios::app : std::ios::trunc));
  if (!out) throw CodecError("cannot write " + path);
  for (const auto& plane : frame.planes) write_plane(out, plane, frame.bit_depth);
  if (!out) throw CodecError("write error on " + path);
}

static Plane pad_plane(const Plane& src, int pw, int ph) {
  Plane dst(pw, ph);
  for (int y = 0; y < ph; ++y) {
    const int sy = std::min(y, src.height - 1);
    for (int x = 0; x < pw; ++x) {
      dst.at(x, y) = src.at(std::min(x, src.width - 1), sy);
    }
  }
  return dst;
}

Frame pad_to_multiple(const Frame& frame, int multiple) {
  const int pw = (frame.width + multiple - 1) / multiple * multiple;
  const int ph = (frame.height + multiple - 1) / multiple * multiple;
  if (pw == frame.width && ph == frame.height) return frame;
  Frame out(pw, ph, frame.bit_depth);
  out.planes[kPlaneY] = pad_plane(frame.planes[kPlaneY], pw, ph);
  out.planes[kPlaneCb] = pad_plane(frame.planes[kPlaneCb], pw / 2, ph / 2);
  out.planes[kPlaneCr] = pad_plane(frame.planes[kPlaneCr], pw / 2, ph / 2);
  return out;
}

Frame crop(const Frame& frame, int width, int height) {
  if (width == frame.width && height == frame.height) return frame;
  Frame out(width, height, frame.bit_depth);
  for (int p = 0; p < 3; ++p) {
    Plane& dst = out.planes[p];
    const Plane& src = frame.planes[p];
    for (int y = 0; y < dst.height; ++y) {
      for (int x = 0; x < dst.width; ++x) dst.at(x, y) = src.at(x, y);
    }
  }
  return out;
}

}  // namespace mrli
