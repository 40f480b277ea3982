#include <filesystem>

#include <gtest/gtest.h>

#include "balltrack/image.hpp"

using namespace balltrack;

namespace
{

Image gradient(int w, int h, int c)
{
  Image img(w, h, c);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int k = 0; k < c; ++k) {
        img.at(x, y, k) = std::uint8_t((x * 7 + y * 13 + k * 50) % 256);
      }
    }
  }
  return img;
}

}  // namespace

TEST(Image, PngRoundTripGray)
{
  const Image img = gradient(37, 21, 1);
  EXPECT_EQ(decode_png(encode_png(img)), img);
}

TEST(Image, PngRoundTripRgbKeepsChannelOrder)
{
  Image img(4, 3, 3);
  img.at(1, 1, 0) = 255;  // pure red
  img.at(2, 1, 2) = 200;  // blue
  const Image back = decode_png(encode_png(img));
  EXPECT_EQ(back, img);
  EXPECT_EQ(back.at(1, 1, 0), 255);
  EXPECT_EQ(back.at(1, 1, 2), 0);
}

TEST(Image, PngFileRoundTrip)
{
  const auto path = std::filesystem::temp_directory_path() / "balltrack_image_test.png";
  const Image img = gradient(64, 48, 3);
  write_png(path, img);
  EXPECT_EQ(read_png(path), img);
  std::filesystem::remove(path);
}

TEST(Image, BadInputsThrow)
{
  const std::vector<std::uint8_t> junk{1, 2, 3, 4, 5};
  EXPECT_THROW(decode_png(junk), ImageIoError);
  EXPECT_THROW(read_png("/nonexistent/frame.png"), ImageIoError);
}

TEST(Image, CropCopiesWindow)
{
  const Image img = gradient(50, 40, 3);
  const Image c = crop(img, {10, 5, 16});
  ASSERT_EQ(c.width, 16);
  ASSERT_EQ(c.height, 16);
  ASSERT_EQ(c.channels, 3);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) {
      for (int k = 0; k < 3; ++k) {
        ASSERT_EQ(c.at(x, y, k), img.at(x + 10, y + 5, k));
      }
    }
  }
  EXPECT_THROW(crop(img, {40, 0, 16}), std::out_of_range);
}

TEST(Image, GrayConversion)
{
  Image img(2, 1, 3);
  img.at(0, 0, 0) = 255;
  img.at(1, 0, 0) = 100;
  img.at(1, 0, 1) = 100;
  img.at(1, 0, 2) = 100;
  const Image g = to_gray(img);
  ASSERT_EQ(g.channels, 1);
  EXPECT_NEAR(g.at(0, 0), 0.299 * 255, 1.0);
  EXPECT_EQ(g.at(1, 0), 100);
  const Image already = gradient(5, 5, 1);
  EXPECT_EQ(to_gray(already), already);
}
