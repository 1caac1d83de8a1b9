#include "voltroute/graph_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "voltroute/error.hpp"

namespace voltroute {
namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) {
    line = line.substr(0, hash);
  }
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <class T>
T parse_number(std::string_view token, std::size_t line, const char* what) {
  T value{};
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, std::string("expected ") + what + ", got '" +
                               std::string(token) + "'");
  }
  return value;
}

}  // namespace

std::string format_real(double x) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  std::string s(buf.data(), ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

WeightedGraph parse_edge_list(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  int n = 0;
  long long m = 0;
  std::vector<EdgeTriple> edges;

  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (!have_header) {
      if (tokens.size() != 2) throw ParseError(line_no, "header must be 'n m'");
      n = parse_number<int>(tokens[0], line_no, "vertex count");
      m = parse_number<long long>(tokens[1], line_no, "edge count");
      if (n <= 0) throw ParseError(line_no, "vertex count must be positive");
      if (m < 0) throw ParseError(line_no, "edge count must be nonnegative");
      have_header = true;
      continue;
    }
    if (tokens.size() != 3) throw ParseError(line_no, "edge line must be 'tail head weight'");
    if (static_cast<long long>(edges.size()) == m) {
      throw ParseError(line_no, "more edge lines than the header's m = " + std::to_string(m));
    }
    EdgeTriple e{parse_number<int>(tokens[0], line_no, "vertex id"),
                 parse_number<int>(tokens[1], line_no, "vertex id"),
                 parse_number<double>(tokens[2], line_no, "weight")};
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw ParseError(line_no, "vertex id out of range [0, " + std::to_string(n) + ")");
    }
    if (e.u == e.v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(e.u));
    if (!(e.weight > 0.0)) throw ParseError(line_no, "weight must be positive");
    edges.push_back(e);
  }

  if (!have_header) throw ParseError(line_no, "missing 'n m' header");
  if (static_cast<long long>(edges.size()) != m) {
    throw ParseError(line_no, "expected " + std::to_string(m) + " edge lines, found " +
                                  std::to_string(edges.size()));
  }
  return WeightedGraph::build(n, edges);
}

std::string serialize(const WeightedGraph& g) {
  std::string out = std::to_string(g.num_vertices()) + " " + std::to_string(g.num_edges()) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.tail);
    out += ' ';
    out += std::to_string(e.head);
    out += ' ';
    out += format_real(e.weight);
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InvalidArgument("failed writing '" + path + "'");
}

WeightedGraph read_graph_file(const std::string& path) {
  return parse_edge_list(read_text_file(path));
}

}  // namespace voltroute
