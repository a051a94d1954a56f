#ifndef BTSURF_TEXT_HPP_
#define BTSURF_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

/* Line-oriented helpers shared by the file parsers. Blank lines and lines
 * starting with '#' are skipped. */
namespace btsurf::text {

struct Line {
  std::size_t number;  // 1-based
  std::string text;
  [[noreturn]] void fail(const std::string& what) const;
};

std::vector<Line> lines(std::string_view body);
std::vector<std::string> split_ws(std::string_view s);
std::string trim(std::string_view s);
/* Whole-token integer parse; throws InputError naming `what`. */
long parse_long(std::string_view tok, const char* what);

std::string read_file(const std::string& path);

}  // namespace btsurf::text

#endif  // BTSURF_TEXT_HPP_
