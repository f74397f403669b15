// zio.hpp -- line reading with transparent gzip support.

#ifndef MSC_ZIO_HPP
#define MSC_ZIO_HPP

#include <zlib.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace msc {

// Reads a whole text file as lines; files ending in .gz are decompressed on
// the fly. Trailing \r is stripped so DOS line endings are harmless.
inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::vector<std::string> lines;
  auto push = [&lines](std::string&& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  };
  if (path.extension() == ".gz") {
    gzFile f = gzopen(path.string().c_str(), "rb");
    if (!f)
      throw std::runtime_error("cannot open '" + path.string() + "'");
    std::string line;
    char buf[1 << 16];
    while (gzgets(f, buf, sizeof buf)) {
      line += buf;
      if (!line.empty() && line.back() == '\n') {
        line.pop_back();
        push(std::move(line));
        line.clear();
      }
    }
    int err = 0;
    gzerror(f, &err);
    gzclose(f);
    if (err != Z_OK && err != Z_STREAM_END)
      throw std::runtime_error("error decompressing '" + path.string() + "'");
    if (!line.empty()) push(std::move(line));
  } else {
    std::ifstream in(path);
    if (!in)
      throw std::runtime_error("cannot open '" + path.string() + "'");
    std::string line;
    while (std::getline(in, line)) push(std::move(line));
  }
  return lines;
}

}  // namespace msc

#endif  // MSC_ZIO_HPP
