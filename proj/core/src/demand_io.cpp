#include "voltroute/demand_io.hpp"

#include <charconv>
#include <vector>

#include "voltroute/error.hpp"
#include "voltroute/graph_io.hpp"

namespace voltroute {
namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> out;
  std::size_t i = 0;
  auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && blank(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !blank(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <class T>
T number(std::string_view tok, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "malformed number '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

DemandSet parse_demand_set(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header = false;
  int n = 0;
  int k = 0;
  DemandSet out;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    const auto tokens = split_tokens(line);
    if (tokens.empty()) continue;
    if (!header) {
      if (tokens.size() != 2) throw ParseError(line_no, "header must be 'n k'");
      n = number<int>(tokens[0], line_no);
      k = number<int>(tokens[1], line_no);
      if (n <= 0 || k <= 0) throw ParseError(line_no, "n and k must be positive");
      header = true;
      continue;
    }
    if (static_cast<int>(out.size()) == k) {
      throw ParseError(line_no, "more demand lines than the header's k = " + std::to_string(k));
    }
    try {
      if (static_cast<int>(tokens.size()) == n) {
        VertexVector d(n);
        for (int i = 0; i < n; ++i) d[i] = number<double>(tokens[static_cast<std::size_t>(i)], line_no);
        out.emplace_back(std::move(d));
      } else if (tokens.size() == 3) {
        const int s = number<int>(tokens[0], line_no);
        const int t = number<int>(tokens[1], line_no);
        const double amount = number<double>(tokens[2], line_no);
        out.push_back(Demand::pair(n, s, t, amount));
      } else {
        throw ParseError(line_no, "expected " + std::to_string(n) +
                                      " reals or 's t amount', got " +
                                      std::to_string(tokens.size()) + " tokens");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!header) throw ParseError(line_no, "missing 'n k' header");
  if (static_cast<int>(out.size()) != k) {
    throw ParseError(line_no, "expected " + std::to_string(k) + " demand lines, found " +
                                  std::to_string(out.size()));
  }
  return out;
}

std::string serialize_demand_set(const DemandSet& ds) {
  if (ds.empty()) throw InvalidArgument("serialize_demand_set: empty demand set");
  const int n = ds.front().size();
  std::string out = std::to_string(n) + " " + std::to_string(ds.size()) + "\n";
  for (const Demand& d : ds) {
    if (d.size() != n) throw InvalidArgument("serialize_demand_set: ragged demand set");
    for (int i = 0; i < n; ++i) {
      if (i) out += ' ';
      out += format_real(d.values()[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace voltroute
