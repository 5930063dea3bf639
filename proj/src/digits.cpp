#include "digits.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace mcf {

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (int v : img_) {
    if (v < 1 || v > static_cast<int>(img_.size()) || seen[v - 1])
      fail(ErrorCode::invalid_argument, "not a permutation");
    seen[v - 1] = true;
  }
}

Permutation Permutation::identity(int m) {
  std::vector<int> v(m);
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::reversal(int m) {
  std::vector<int> v(m);
  for (int i = 0; i < m; ++i) v[i] = m - i;
  return Permutation(std::move(v));
}

Permutation Permutation::inverse() const {
  std::vector<int> v(img_.size());
  for (int i = 0; i < static_cast<int>(img_.size()); ++i) v[img_[i] - 1] = i + 1;
  return Permutation(std::move(v));
}

Permutation Permutation::compose(const Permutation& rho) const {
  if (size() != rho.size())
    fail(ErrorCode::dimension_mismatch, "permutation size mismatch");
  std::vector<int> v(img_.size());
  for (int i = 1; i <= size(); ++i) v[i - 1] = (*this)(rho(i));
  return Permutation(std::move(v));
}

bool Permutation::is_identity() const {
  for (int i = 1; i <= size(); ++i)
    if ((*this)(i) != i) return false;
  return true;
}

bool Permutation::is_involution() const {
  for (int i = 1; i <= size(); ++i)
    if ((*this)((*this)(i)) != i) return false;
  return true;
}

std::string Permutation::cycle_string() const {
  std::string out;
  std::vector<bool> done(img_.size(), false);
  for (int i = 1; i <= size(); ++i) {
    if (done[i - 1] || (*this)(i) == i) continue;
    out.push_back('(');
    int j = i;
    do {
      done[j - 1] = true;
      out += std::to_string(j);
      j = (*this)(j);
    } while (j != i);
    out.push_back(')');
  }
  return out.empty() ? "e" : out;
}

Permutation Permutation::parse_cycles(const std::string& text, int m) {
  if (text == "e" || text == "()") return identity(m);
  std::vector<int> img(m);
  std::iota(img.begin(), img.end(), 1);
  size_t pos = 0;
  bool any = false;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) { ++pos; continue; }
    if (text[pos] != '(')
      fail(ErrorCode::bad_digit_string, "expected '(' in cycle notation: " + text);
    ++pos;
    std::vector<int> cycle;
    while (pos < text.size() && text[pos] != ')') {
      char c = text[pos];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        int v = c - '0';
        if (v < 1 || v > m)
          fail(ErrorCode::bad_digit_string, "cycle element out of range: " + text);
        cycle.push_back(v);
        ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
        ++pos;
      } else {
        fail(ErrorCode::bad_digit_string, "bad character in cycle: " + text);
      }
    }
    if (pos >= text.size())
      fail(ErrorCode::bad_digit_string, "unterminated cycle: " + text);
    ++pos;  // ')'
    if (cycle.size() < 2)
      fail(ErrorCode::bad_digit_string, "cycle needs at least two elements");
    // apply the cycle on the left: new = cycle o old
    std::vector<int> step(m);
    std::iota(step.begin(), step.end(), 1);
    for (size_t i = 0; i + 1 < cycle.size(); ++i) step[cycle[i] - 1] = cycle[i + 1];
    step[cycle.back() - 1] = cycle.front();
    for (int i = 0; i < m; ++i) img[i] = step[img[i] - 1];
    any = true;
  }
  if (!any) fail(ErrorCode::bad_digit_string, "empty permutation token");
  return Permutation(img);
}

bool Digit::operator==(const Digit& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::integer: return value == o.value;
    case Kind::pair: return value == o.value && count == o.count;
    case Kind::perm: return perm == o.perm;
  }
  return false;
}

bool Digit::operator<(const Digit& o) const {
  if (kind != o.kind) return kind < o.kind;
  switch (kind) {
    case Kind::integer: return value < o.value;
    case Kind::pair: return std::tie(value, count) < std::tie(o.value, o.count);
    case Kind::perm: return perm < o.perm;
  }
  return false;
}

std::string Digit::str() const {
  switch (kind) {
    case Kind::integer: return std::to_string(value);
    case Kind::pair: return std::to_string(value) + ":" + std::to_string(count);
    case Kind::perm: return perm.cycle_string();
  }
  return "?";
}

DigitString parse_digit_string(const std::string& text, Digit::Kind kind,
                               int perm_size) {
  DigitString out;
  std::string token;
  int paren = 0;
  auto flush = [&] {
    // trim
    size_t b = token.find_first_not_of(" \t");
    size_t e = token.find_last_not_of(" \t");
    if (b == std::string::npos) { token.clear(); return; }
    std::string t = token.substr(b, e - b + 1);
    token.clear();
    switch (kind) {
      case Digit::Kind::integer: {
        try {
          size_t used = 0;
          long long v = std::stoll(t, &used);
          if (used != t.size() || v < 0) throw std::invalid_argument(t);
          out.push_back(Digit::integer(v));
        } catch (const std::exception&) {
          fail(ErrorCode::bad_digit_string, "bad integer digit: " + t);
        }
        break;
      }
      case Digit::Kind::pair: {
        auto colon = t.find(':');
        if (colon == std::string::npos)
          fail(ErrorCode::bad_digit_string, "pair digit must be i:N, got " + t);
        try {
          long long i = std::stoll(t.substr(0, colon));
          long long n = std::stoll(t.substr(colon + 1));
          if (i < 1 || n < 1) throw std::invalid_argument(t);
          out.push_back(Digit::pair(i, n));
        } catch (const std::exception&) {
          fail(ErrorCode::bad_digit_string, "bad pair digit: " + t);
        }
        break;
      }
      case Digit::Kind::perm:
        out.push_back(Digit::permutation(Permutation::parse_cycles(t, perm_size)));
        break;
    }
  };
  for (char c : text) {
    if (c == '(') ++paren;
    if (c == ')') --paren;
    if (c == ',' && paren == 0) {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  return out;
}

std::string format_digit_string(const DigitString& digits) {
  std::ostringstream os;
  for (size_t i = 0; i < digits.size(); ++i) os << (i ? "," : "") << digits[i].str();
  return os.str();
}

}  // namespace mcf
