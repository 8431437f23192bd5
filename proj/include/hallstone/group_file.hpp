#pragma once

// Group-file grammar:
//
//   degree: 4
//   generators: (1 2 3 4), (1 2)
//
// Cycle notation is 1-based and whitespace-insensitive; generators are
// separated by commas and may span lines; "()" is the identity.  Errors
// carry line and column.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hallstone/errors.hpp"
#include "hallstone/perm.hpp"

namespace hallstone {

struct ParsedGroupFile {
  std::uint32_t degree = 1;
  std::vector<Perm> generators;
};

namespace detail {

class GroupFileScanner {
public:
  explicit GroupFileScanner(std::string text) : text_(std::move(text)) {}

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r' ||
                                   text_[pos_] == '\n')) {
      advance();
    }
  }

  bool eof() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c, const char* what) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError(std::string("expected '") + c + "' " + what, line_, col_);
    advance();
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      advance();
      return true;
    }
    return false;
  }

  void expect_keyword(const std::string& kw) {
    skip_ws();
    if (text_.compare(pos_, kw.size(), kw) != 0)
      throw ParseError("expected \"" + kw + "\"", line_, col_);
    for (std::size_t i = 0; i < kw.size(); ++i) advance();
  }

  std::uint64_t read_number(const char* what) {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw ParseError(std::string("expected ") + what, line_, col_);
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > 1000000) throw ParseError(std::string(what) + " is too large", line_, col_);
      advance();
    }
    return v;
  }

  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }

private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

// One permutation: a sequence of parenthesized cycles.
inline Perm parse_perm(GroupFileScanner& sc, std::uint32_t degree) {
  std::vector<std::vector<std::uint32_t>> cycles;
  std::vector<bool> used(degree, false);
  do {
    sc.expect('(', "to start a cycle");
    std::vector<std::uint32_t> cyc;
    while (!sc.consume(')')) {
      std::size_t at_line = sc.line();
      std::size_t at_col = sc.column();
      std::uint64_t pt = sc.read_number("a point inside a cycle");
      if (pt < 1 || pt > degree)
        throw ParseError("point " + std::to_string(pt) + " out of range 1.." + std::to_string(degree), at_line,
                         at_col);
      if (used[pt - 1])
        throw ParseError("duplicate point " + std::to_string(pt) + " in a cycle", at_line, at_col);
      used[pt - 1] = true;
      cyc.push_back(static_cast<std::uint32_t>(pt));
      sc.consume(',');  // points may be separated by spaces or commas
    }
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
    sc.skip_ws();
  } while (sc.peek() == '(');
  return Perm::from_cycles(degree, cycles);
}

}  // namespace detail

inline ParsedGroupFile parse_group_text(const std::string& text) {
  detail::GroupFileScanner sc(text);
  sc.expect_keyword("degree");
  sc.expect(':', "after \"degree\"");
  std::uint64_t degree = sc.read_number("a positive degree");
  if (degree < 1) throw ParseError("degree must be positive", sc.line(), sc.column());
  ParsedGroupFile out;
  out.degree = static_cast<std::uint32_t>(degree);
  sc.expect_keyword("generators");
  sc.expect(':', "after \"generators\"");
  if (!sc.eof()) {
    do {
      out.generators.push_back(detail::parse_perm(sc, out.degree));
    } while (sc.consume(','));
  }
  if (!sc.eof()) throw ParseError("unexpected trailing input", sc.line(), sc.column());
  return out;
}

// A bare comma-separated permutation list, e.g. "(1 2 3), (1 2)(3 4)".
inline std::vector<Perm> parse_perm_list(const std::string& text, std::uint32_t degree) {
  detail::GroupFileScanner sc(text);
  std::vector<Perm> out;
  if (!sc.eof()) {
    do {
      out.push_back(detail::parse_perm(sc, degree));
    } while (sc.consume(','));
  }
  if (!sc.eof()) throw ParseError("unexpected trailing input", sc.line(), sc.column());
  return out;
}

inline ParsedGroupFile parse_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open group file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_group_text(buf.str());
}

// File form of a group; parse(group_file_text(...)) round-trips.
inline std::string group_file_text(std::uint32_t degree, const std::vector<Perm>& generators) {
  std::string s = "degree: " + std::to_string(degree) + "\ngenerators:";
  for (std::size_t i = 0; i < generators.size(); ++i) {
    s += i == 0 ? " " : ", ";
    s += generators[i].cycle_string();
  }
  s += "\n";
  return s;
}

}  // namespace hallstone
