#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wkpyramid/errors.hpp"

namespace wkp {

using Digit = std::uint32_t;

/// Identity of a pyramid vertex: level r and the digit string a_r ... a_1,
/// most significant digit first. The apex is level 0 with no digits and is
/// displayed as "(0,(1))".
struct Address {
  unsigned level = 0;
  std::vector<Digit> digits;

  static Address apex() { return {}; }

  bool is_apex() const noexcept { return level == 0; }

  /// All digits equal (every level-1 address qualifies). The apex is not
  /// extreme.
  bool is_extreme() const noexcept {
    if (digits.empty()) return false;
    for (Digit d : digits)
      if (d != digits.front()) return false;
    return true;
  }

  /// Canonical order: ascending level, then lexicographic digits.
  friend auto operator<=>(const Address& a, const Address& b) {
    if (auto c = a.level <=> b.level; c != 0) return c;
    return a.digits <=> b.digits;
  }
  friend bool operator==(const Address&, const Address&) = default;
};

/// Digits are written back to back while every digit fits one decimal
/// character (C <= 10) and dot-separated otherwise.
inline std::string render_digits(const std::vector<Digit>& digits, std::uint32_t C) {
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (C > 10 && i > 0) out += '.';
    out += std::to_string(digits[i]);
  }
  return out;
}

inline std::string to_string(const Address& a, std::uint32_t C) {
  if (a.is_apex()) return "(0,(1))";
  return "(" + std::to_string(a.level) + ",(" + render_digits(a.digits, C) + "))";
}

namespace detail {

class AddressScanner {
 public:
  explicit AddressScanner(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::uint64_t number() {
    skip_ws();
    const auto start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > 0xffffffffu) fail("number too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected a number");
    return v;
  }
  std::string_view until(char c) {
    const auto start = pos_;
    while (pos_ < text_.size() && text_[pos_] != c) ++pos_;
    return text_.substr(start, pos_ - start);
  }
  std::size_t pos() const noexcept { return pos_; }
  [[noreturn]] void fail(const std::string& why) const {
    throw DomainError("malformed address '" + std::string(text_) + "': " + why);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

inline std::vector<Digit> parse_digit_string(std::string_view body, const AddressScanner& sc, bool dotted = false) {
  std::vector<Digit> digits;
  auto trimmed = body;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
    trimmed.remove_prefix(1);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
    trimmed.remove_suffix(1);
  if (dotted || trimmed.find('.') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= trimmed.size()) {
      const auto end = std::min(trimmed.find('.', start), trimmed.size());
      const auto piece = trimmed.substr(start, end - start);
      if (piece.empty()) sc.fail("empty digit");
      std::uint64_t v = 0;
      for (char ch : piece) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) sc.fail("non-decimal digit");
        v = v * 10 + static_cast<std::uint64_t>(ch - '0');
        if (v > 0xffffffffu) sc.fail("digit too large");
      }
      digits.push_back(static_cast<Digit>(v));
      start = end + 1;
    }
  } else {
    for (char ch : trimmed) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) sc.fail("non-decimal digit");
      digits.push_back(static_cast<Digit>(ch - '0'));
    }
  }
  return digits;
}

}  // namespace detail

/// Parses "(r,(a_r...a_1))" or the apex literal "(0,(1))". Digits must be
/// below C and the digit count must equal r. When `max_level` is nonzero,
/// r must not exceed it.
inline Address parse_address(std::string_view text, std::uint32_t C, unsigned max_level = 0) {
  detail::AddressScanner sc(text);
  sc.expect('(');
  const auto level = sc.number();
  sc.expect(',');
  sc.expect('(');
  const auto body = sc.until(')');
  sc.expect(')');
  sc.expect(')');
  if (!sc.at_end()) sc.fail("trailing characters");

  if (level == 0) {
    if (detail::parse_digit_string(body, sc, C > 10) != std::vector<Digit>{1})
      sc.fail("the apex is written (0,(1))");
    return Address::apex();
  }
  if (max_level != 0 && level > max_level)
    sc.fail("level " + std::to_string(level) + " exceeds L=" + std::to_string(max_level));
  Address a;
  a.level = static_cast<unsigned>(level);
  a.digits = detail::parse_digit_string(body, sc, C > 10);
  if (a.digits.size() != a.level)
    sc.fail("level " + std::to_string(level) + " needs " + std::to_string(level) + " digits, got " +
            std::to_string(a.digits.size()));
  for (Digit d : a.digits)
    if (d >= C) sc.fail("digit " + std::to_string(d) + " is not below C=" + std::to_string(C));
  return a;
}

/// Splits a seed-set literal into address tokens. Addresses may be separated
/// by whitespace, commas or semicolons: "(0,(1)) (1,(2)); (2,(01))".
inline std::vector<std::string> split_address_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',' || ch == ';') {
      ++i;
      continue;
    }
    if (ch != '(') throw DomainError("malformed address list near '" + std::string(text.substr(i)) + "'");
    int depth = 0;
    const auto start = i;
    for (; i < text.size(); ++i) {
      if (text[i] == '(') ++depth;
      if (text[i] == ')' && --depth == 0) break;
    }
    if (depth != 0) throw DomainError("unbalanced parentheses in address list");
    out.emplace_back(text.substr(start, i - start + 1));
    ++i;
  }
  return out;
}

}  // namespace wkp
