#include "png_writer.hpp"

#include <png.h>

#include <cstdio>
#include <memory>
#include <vector>

#include "bishop/error.hpp"

namespace bishop::tools {

void write_png(const Raster& raster, const std::filesystem::path& path,
               std::optional<ObjectId> highlight) {
  std::vector<png_byte> pixels(static_cast<std::size_t>(raster.width) * raster.height * 3);
  for (int y = 0; y < raster.height; ++y) {
    for (int x = 0; x < raster.width; ++x) {
      Rgb c = raster.colour(x, y);
      if (highlight && raster.owner(x, y) == *highlight) {
        const bool edge = !raster.in_bounds(x - 1, y) || !raster.in_bounds(x + 1, y) ||
                          !raster.in_bounds(x, y - 1) || !raster.in_bounds(x, y + 1) ||
                          raster.owner(x - 1, y) != *highlight ||
                          raster.owner(x + 1, y) != *highlight ||
                          raster.owner(x, y - 1) != *highlight ||
                          raster.owner(x, y + 1) != *highlight;
        if (edge) c = Rgb{255, 255, 255};
      }
      const std::size_t i = raster.index(x, y) * 3;
      pixels[i] = c.r;
      pixels[i + 1] = c.g;
      pixels[i + 2] = c.b;
    }
  }

  std::unique_ptr<FILE, int (*)(FILE*)> file(std::fopen(path.c_str(), "wb"), &std::fclose);
  if (!file) throw Error(Errc::kIo, "cannot write " + path.string());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw Error(Errc::kIo, "libpng initialisation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(Errc::kIo, "libpng failed writing " + path.string());
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(raster.width),
               static_cast<png_uint_32>(raster.height), 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < raster.height; ++y) {
    png_write_row(png, &pixels[static_cast<std::size_t>(y) * raster.width * 3]);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace bishop::tools
