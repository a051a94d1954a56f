#include "btsurf/text.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "btsurf/error.hpp"

namespace btsurf::text {

void Line::fail(const std::string& what) const {
  throw InputError("line " + std::to_string(number) + ": " + what + " (in '" + text + "')");
}

std::vector<Line> lines(std::string_view body) {
  std::vector<Line> out;
  std::size_t start = 0, n = 0;
  while (start <= body.size()) {
    std::size_t end = body.find('\n', start);
    if (end == std::string_view::npos) end = body.size();
    ++n;
    std::string l = trim(body.substr(start, end - start));
    if (!l.empty() && l[0] != '#') out.push_back({n, std::move(l)});
    start = end + 1;
  }
  return out;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

long parse_long(std::string_view tok, const char* what) {
  long v = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && tok[0] == '+') ++first;
  auto [p, ec] = std::from_chars(first, last, v);
  if (tok.empty() || ec != std::errc() || p != last)
    throw InputError(std::string("invalid ") + what + " '" + std::string(tok) + "'");
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace btsurf::text
