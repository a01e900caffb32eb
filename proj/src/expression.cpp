#include "lieweight/expression.hpp"

#include "lieweight/errors.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <vector>

namespace lieweight {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      message_(message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Nat, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const std::size_t l = line, cl = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Nat, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    }
    out.push_back({kind, std::string(1, c), l, cl});
    advance(1);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// s + sum_a d[a] d/dx_a; d is empty when no derivation occurs.
struct Value {
  RatFunc s;
  std::vector<RatFunc> d;
  bool has_d() const { return !d.empty(); }
};

class Parser {
 public:
  Parser(std::string_view src, const Chart& chart, bool allow_division)
      : toks_(tokenize(src)), chart_(chart), n_(chart.dimension()), allow_division_(allow_division) {}

  Value parse() {
    Value v = expr();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'", peek());
    return v;
  }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.column);
  }
  const Token& first() const { return toks_.front(); }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& take() { return toks_[pos_++]; }

  Value add(Value a, const Value& b, bool subtract) {
    if (subtract) a.s -= b.s; else a.s += b.s;
    if (b.has_d()) {
      if (!a.has_d()) a.d.assign(n_, RatFunc(n_));
      for (std::size_t i = 0; i < n_; ++i)
        if (subtract) a.d[i] -= b.d[i]; else a.d[i] += b.d[i];
    }
    return a;
  }

  Value mul(const Value& a, const Value& b, const Token& at) {
    if (a.has_d() && b.has_d()) fail("product of two derivations", at);
    Value out{a.s * b.s, {}};
    if (a.has_d() || b.has_d()) {
      const Value& dv = a.has_d() ? a : b;
      const Value& sv = a.has_d() ? b : a;
      out.d.reserve(n_);
      for (std::size_t i = 0; i < n_; ++i) out.d.push_back(dv.d[i] * sv.s);
    }
    return out;
  }

  Value expr() {
    Value v = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool sub = take().kind == Tok::Minus;
      v = add(std::move(v), term(), sub);
    }
    return v;
  }

  Value term() {
    Value v = factor();
    for (;;) {
      if (peek().kind == Tok::Star) {
        const Token& op = take();
        v = mul(v, factor(), op);
      } else if (peek().kind == Tok::Slash && allow_division_) {
        const Token& op = take();
        Value den = factor();
        if (den.has_d()) fail("division by a derivation", op);
        if (den.s.is_zero()) fail("division by zero", op);
        v.s /= den.s;
        for (auto& c : v.d) c /= den.s;
      } else {
        return v;
      }
    }
  }

  Value factor() {
    if (peek().kind == Tok::Minus) {
      take();
      Value v = factor();
      v.s = -v.s;
      for (auto& c : v.d) c = -c;
      return v;
    }
    Value base = atom();
    if (peek().kind != Tok::Caret) return base;
    const Token& op = take();
    if (peek().kind != Tok::Nat) fail("expected exponent after '^'", peek());
    const Token& e = take();
    if (e.text.size() > 4) fail("exponent too large", e);
    const unsigned k = static_cast<unsigned>(std::stoul(e.text));
    if (base.has_d()) {
      if (k >= 2) fail("power of a derivation", op);
      if (k == 0) return Value{RatFunc::constant(n_, 1), {}};
      return base;
    }
    if (base.s.is_polynomial()) return Value{RatFunc(base.s.as_poly().pow(k)), {}};
    RatFunc r = RatFunc::constant(n_, 1);
    for (unsigned i = 0; i < k; ++i) r *= base.s;
    return Value{r, {}};
  }

  Value atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Nat: {
        take();
        Rational q(mpz_class(t.text, 10));
        if (peek().kind == Tok::Slash && peek(1).kind == Tok::Nat) {
          take();
          const Token& d = take();
          mpz_class den(d.text, 10);
          if (den == 0) fail("zero denominator", d);
          q /= Rational(den);
        }
        return Value{RatFunc::constant(n_, q), {}};
      }
      case Tok::Ident: {
        take();
        if (auto idx = chart_.index_of(t.text)) return Value{RatFunc(Poly::variable(n_, *idx)), {}};
        if (t.text.size() > 1 && t.text.front() == 'd') {
          if (auto idx = chart_.index_of(std::string_view(t.text).substr(1))) {
            Value v{RatFunc(n_), std::vector<RatFunc>(n_, RatFunc(n_))};
            v.d[*idx] = RatFunc::constant(n_, 1);
            return v;
          }
        }
        fail("unknown identifier '" + t.text + "'", t);
      }
      case Tok::LParen: {
        take();
        Value v = expr();
        if (peek().kind != Tok::RParen) fail("expected ')'", peek());
        take();
        return v;
      }
      case Tok::End:
        fail("unexpected end of input", t);
      default:
        fail("unexpected '" + t.text + "'", t);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Chart& chart_;
  std::size_t n_;
  bool allow_division_;
};

RatFunc parse_scalar(std::string_view src, const Chart& chart, bool division) {
  Parser p(src, chart, division);
  Value v = p.parse();
  if (v.has_d()) {
    for (const auto& c : v.d)
      if (!c.is_zero()) p.fail("derivation in a scalar expression", p.first());
  }
  return v.s;
}

VectorField parse_field(std::string_view src, const Chart& chart, bool division) {
  Parser p(src, chart, division);
  Value v = p.parse();
  if (!v.s.is_zero()) p.fail("vector-field expression has a term without a d-factor", p.first());
  if (!v.has_d()) return VectorField(chart.dimension());
  return VectorField(std::move(v.d));
}

// |c| * m without sign; empty monomial gives just the coefficient.
std::string term_body(const Monomial& m, const Rational& abs_c, const Chart& chart, bool omit_unit) {
  std::string mono;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!mono.empty()) mono += "*";
    mono += chart.name(i);
    if (m[i] > 1) mono += "^" + std::to_string(m[i]);
  }
  if (mono.empty()) return omit_unit && abs_c == 1 ? std::string() : to_string(abs_c);
  if (abs_c == 1) return mono;
  return to_string(abs_c) + "*" + mono;
}

}  // namespace

Poly parse_poly(std::string_view src, const Chart& chart) {
  return parse_scalar(src, chart, false).as_poly();
}

VectorField parse_vf(std::string_view src, const Chart& chart) { return parse_field(src, chart, false); }

RatFunc parse_ratfunc(std::string_view src, const Chart& chart) { return parse_scalar(src, chart, true); }

VectorField parse_vf_rational(std::string_view src, const Chart& chart) {
  return parse_field(src, chart, true);
}

std::string to_string(const Poly& p, const Chart& chart) {
  if (p.nvars() != chart.dimension()) throw DimensionMismatch("to_string: chart mismatch");
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool neg = sgn(c) < 0;
    const std::string body = term_body(m, neg ? Rational(-c) : c, chart, false);
    if (first) out += neg ? "-" + body : body;
    else out += (neg ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

std::string to_string(const RatFunc& f, const Chart& chart) {
  if (f.is_polynomial()) return to_string(f.as_poly(), chart);
  return "(" + to_string(f.num(), chart) + ")/(" + to_string(f.den(), chart) + ")";
}

std::string to_string(const VectorField& v, const Chart& chart) {
  if (v.dimension() != chart.dimension()) throw DimensionMismatch("to_string: chart mismatch");
  std::string out;
  bool first = true;
  for (std::size_t a = 0; a < v.dimension(); ++a) {
    const RatFunc& c = v.coefficient(a);
    if (c.is_zero()) continue;
    const std::string d = "d" + chart.name(a);
    bool neg = false;
    std::string body;
    if (c.is_polynomial() && c.num().term_count() == 1) {
      const auto& [m, k] = *c.num().terms().begin();
      neg = sgn(k) < 0;
      const std::string coef = term_body(m, neg ? Rational(-k) : k, chart, true);
      body = coef.empty() ? d : coef + "*" + d;
    } else {
      body = "(" + to_string(c, chart) + ")*" + d;
    }
    if (first) out += neg ? "-" + body : body;
    else out += (neg ? " - " : " + ") + body;
    first = false;
  }
  return first ? "0" : out;
}

}  // namespace lieweight
