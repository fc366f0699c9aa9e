#include "dioprime/monomial.hpp"

#include <array>
#include <cctype>
#include <stdexcept>

namespace dioprime {

namespace {

int canonical_rank(const std::string& s) {
  static constexpr std::array<std::string_view, 6> kOrder{"M", "L", "F", "Q", "X", "K"};
  for (std::size_t i = 0; i < kOrder.size(); ++i) {
    if (s == kOrder[i]) return static_cast<int>(i);
  }
  return static_cast<int>(kOrder.size());
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void parse_fail(std::string_view text, const char* why) {
  throw std::invalid_argument("malformed monomial '" + std::string(text) + "': " + why);
}

}  // namespace

bool SymbolOrder::operator()(const std::string& a, const std::string& b) const {
  const int ra = canonical_rank(a);
  const int rb = canonical_rank(b);
  if (ra != rb) return ra < rb;
  return a < b;
}

Monomial::Monomial(std::initializer_list<std::pair<const std::string, Rational>> factors) {
  for (const auto& [sym, e] : factors) set(sym, exponent(sym) + e);
}

Monomial::Monomial(Exponents factors) {
  for (auto& [sym, e] : factors) set(sym, e);
}

Monomial Monomial::symbol(std::string name, Rational exponent) {
  Monomial m;
  m.set(name, std::move(exponent));
  return m;
}

void Monomial::set(const std::string& sym, Rational e) {
  if (sym.empty()) throw std::invalid_argument("monomial symbol name must be non-empty");
  if (e.is_zero()) {
    exps_.erase(sym);
  } else {
    exps_[sym] = std::move(e);
  }
}

Rational Monomial::exponent(const std::string& sym) const {
  auto it = exps_.find(sym);
  return it == exps_.end() ? Rational{} : it->second;
}

Monomial& Monomial::operator*=(const Monomial& o) {
  for (const auto& [sym, e] : o.exps_) set(sym, exponent(sym) + e);
  return *this;
}

Monomial Monomial::pow(const Rational& power) const {
  Monomial r;
  for (const auto& [sym, e] : exps_) r.set(sym, e * power);
  return r;
}

Monomial Monomial::substitute(const std::string& sym, const Monomial& replacement) const {
  const Rational e = exponent(sym);
  Monomial r = without(sym);
  if (!e.is_zero()) r *= replacement.pow(e);
  return r;
}

Monomial Monomial::without(const std::string& sym) const {
  Monomial r = *this;
  r.exps_.erase(sym);
  return r;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  auto ia = a.exps_.begin();
  auto ib = b.exps_.begin();
  const SymbolOrder less;
  for (; ia != a.exps_.end() && ib != b.exps_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) {
      return less(ia->first, ib->first) ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (auto c = ia->second <=> ib->second; c != 0) return c;
  }
  if (ia == a.exps_.end() && ib == b.exps_.end()) return std::strong_ordering::equal;
  return ia == a.exps_.end() ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::string Monomial::str() const {
  if (exps_.empty()) return "1";
  std::string out;
  for (const auto& [sym, e] : exps_) {
    if (!out.empty()) out += '*';
    out += sym;
    out += "^{";
    out += e.str();
    out += '}';
  }
  return out;
}

Monomial Monomial::parse(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  if (text.empty()) parse_fail(whole, "empty term");
  if (text == "1") return {};
  Monomial m;
  while (!text.empty()) {
    std::size_t i = 0;
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
    if (i == 0) parse_fail(whole, "expected symbol");
    std::string sym(text.substr(0, i));
    if (std::isdigit(static_cast<unsigned char>(sym[0]))) parse_fail(whole, "symbol starts with a digit");
    text = trim(text.substr(i));
    Rational e = 1;
    if (!text.empty() && text.front() == '^') {
      text = trim(text.substr(1));
      if (!text.empty() && text.front() == '{') {
        const auto close = text.find('}');
        if (close == std::string_view::npos) parse_fail(whole, "unclosed '{'");
        e = Rational::parse(text.substr(1, close - 1));
        text = text.substr(close + 1);
      } else {
        std::size_t j = 0;
        if (j < text.size() && text[j] == '-') ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j == 0 || (j == 1 && text[0] == '-')) parse_fail(whole, "expected exponent");
        e = Rational::parse(text.substr(0, j));
        text = text.substr(j);
      }
    }
    m.set(sym, m.exponent(sym) + e);
    text = trim(text);
    if (!text.empty()) {
      if (text.front() != '*') parse_fail(whole, "expected '*'");
      text = trim(text.substr(1));
      if (text.empty()) parse_fail(whole, "dangling '*'");
    }
  }
  return m;
}

BoundExpr BoundExpr::parse(std::string_view text) {
  BoundExpr out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto plus = text.find('+', start);
    if (plus == std::string_view::npos) plus = text.size();
    out.add(Monomial::parse(text.substr(start, plus - start)));
    start = plus + 1;
  }
  return out;
}

std::string BoundExpr::str() const {
  std::string out;
  for (const auto& m : terms_) {
    if (!out.empty()) out += " + ";
    out += m.str();
  }
  return out;
}

}  // namespace dioprime
