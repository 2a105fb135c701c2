#pragma once

// Text input:
//   ring GF(2)[a,b] order grevlex;
//   ideal (a^6, a^2*b^4);
//   blocks (1,1);          (optional)
// Orders: lex | grevlex | weight((w11,...),(w21,...)) | nu. '#' starts a comment.

#include "quadgb/groebner.hpp"

#include <cctype>
#include <map>
#include <string>
#include <string_view>

namespace quadgb {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

struct OrderSpec {
  enum class Kind { Lex, Grevlex, Weight, Nu };
  Kind kind = Kind::Grevlex;
  std::vector<std::vector<std::int64_t>> rows;

  /// The order used on the ring itself. The nu order ranks the variables of
  /// Veronese rings built from this ring and is not a monomial order on S,
  /// so S gets grevlex.
  MonomialOrder build(std::size_t nvars) const {
    switch (kind) {
      case Kind::Lex: return MonomialOrder::lex(nvars);
      case Kind::Weight: return MonomialOrder::weight(nvars, rows);
      default: return MonomialOrder::grevlex(nvars);
    }
  }

  std::string name() const {
    if (kind == Kind::Nu) return "nu";
    return build(rows.empty() ? 0 : rows.front().size()).name();
  }
};

/// Polynomial with rational coefficients, before a field is chosen.
using RawPoly = std::map<std::vector<Exponent>, mpq_class>;

struct ParsedInput {
  std::uint32_t prime = 0;  // 0 means QQ
  std::vector<std::string> vars;
  OrderSpec order;
  std::vector<std::size_t> blocks;
  bool has_ideal = false;
  std::vector<RawPoly> gens;
  std::vector<std::pair<std::size_t, std::size_t>> gen_positions;

  template <Field F>
  RingPtr<F> make_ring(const F& field) const {
    return quadgb::make_ring(field, vars, order.build(vars.size()), blocks);
  }

  template <Field F>
  std::vector<Polynomial<F>> generators(const RingPtr<F>& ring) const {
    const F& k = ring->field();
    std::vector<Polynomial<F>> out;
    for (const auto& g : gens) {
      std::vector<Term<F>> t;
      for (const auto& [e, c] : g) {
        t.push_back(Term<F>{k.from_rational(c), Monomial(e)});
      }
      out.push_back(Polynomial<F>::from_terms(ring, std::move(t)));
    }
    return out;
  }

  /// Throws at the first generator that is not homogeneous.
  void require_homogeneous() const {
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::optional<Exponent> d;
      for (const auto& [e, c] : gens[i]) {
        Exponent t = 0;
        for (auto x : e) t += x;
        if (d && *d != t)
          throw ParseError(gen_positions[i].first, gen_positions[i].second, "generator " + std::to_string(i + 1) + " is not homogeneous");
        d = t;
      }
    }
  }

  /// Canonical text; parses back to an equal input.
  template <Field F>
  std::string format(const F& field) const {
    auto ring = make_ring(field);
    std::string s = "ring " + field.name() + "[";
    for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? "," : "") + vars[i];
    s += "] order " + (order.kind == OrderSpec::Kind::Nu ? std::string("nu") : ring->order().name()) + ";\n";
    if (blocks.size() > 1) {
      s += "blocks (";
      for (std::size_t i = 0; i < blocks.size(); ++i) s += (i ? "," : "") + std::to_string(blocks[i]);
      s += ");\n";
    }
    if (has_ideal) {
      s += "ideal (";
      auto g = generators(ring);
      for (std::size_t i = 0; i < g.size(); ++i) s += (i ? ", " : "") + g[i].to_string();
      s += ");\n";
    }
    return s;
  }
};

/// Calls fn with the field object named in the input.
template <class Fn>
decltype(auto) with_field(const ParsedInput& in, Fn&& fn) {
  if (in.prime == 0) return fn(RationalField());
  return fn(PrimeField(in.prime));
}

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : src_(text) {}

  ParsedInput run() {
    ParsedInput in;
    bool have_ring = false;
    skip();
    while (!at_end()) {
      auto [l, c] = pos();
      std::string kw = identifier("statement keyword");
      if (kw == "ring") {
        if (have_ring) throw ParseError(l, c, "duplicate ring declaration");
        parse_ring(in);
        have_ring = true;
      } else if (kw == "ideal") {
        if (!have_ring) throw ParseError(l, c, "ideal before ring declaration");
        if (in.has_ideal) throw ParseError(l, c, "duplicate ideal declaration");
        parse_ideal(in);
      } else if (kw == "blocks") {
        if (!have_ring) throw ParseError(l, c, "blocks before ring declaration");
        parse_blocks(in);
      } else {
        throw ParseError(l, c, "unknown statement '" + kw + "'");
      }
      expect(';');
      skip();
    }
    if (!have_ring) throw ParseError(line_, col_, "missing ring declaration");
    return in;
  }

 private:
  void parse_ring(ParsedInput& in) {
    auto [l, c] = pos();
    std::string f = identifier("field");
    if (f == "QQ") {
      in.prime = 0;
    } else if (f == "GF") {
      expect('(');
      auto [pl, pc] = pos();
      long p = integer();
      if (p < 2 || p >= (1L << 31) || !is_prime(static_cast<std::uint64_t>(p))) throw ParseError(pl, pc, "GF(p) needs a prime p below 2^31");
      in.prime = static_cast<std::uint32_t>(p);
      expect(')');
    } else {
      throw ParseError(l, c, "unknown field '" + f + "' (expected GF(p) or QQ)");
    }
    expect('[');
    do {
      auto [vl, vc] = pos();
      std::string v = identifier("variable name");
      if (std::find(in.vars.begin(), in.vars.end(), v) != in.vars.end()) throw ParseError(vl, vc, "duplicate variable '" + v + "'");
      in.vars.push_back(v);
    } while (accept(','));
    expect(']');
    auto [ol, oc] = pos();
    if (identifier("'order'") != "order") throw ParseError(ol, oc, "expected 'order'");
    auto [kl, kc] = pos();
    std::string o = identifier("order name");
    if (o == "lex") in.order.kind = OrderSpec::Kind::Lex;
    else if (o == "grevlex") in.order.kind = OrderSpec::Kind::Grevlex;
    else if (o == "nu") in.order.kind = OrderSpec::Kind::Nu;
    else if (o == "weight") {
      in.order.kind = OrderSpec::Kind::Weight;
      expect('(');
      do {
        auto [rl, rc] = pos();
        expect('(');
        std::vector<std::int64_t> row;
        do row.push_back(signed_integer());
        while (accept(','));
        expect(')');
        if (row.size() != in.vars.size()) throw ParseError(rl, rc, "weight row has " + std::to_string(row.size()) + " entries for " + std::to_string(in.vars.size()) + " variables");
        in.order.rows.push_back(std::move(row));
      } while (accept(','));
      expect(')');
    } else {
      throw ParseError(kl, kc, "unknown order '" + o + "'");
    }
    vars_ = &in.vars;
  }

  void parse_blocks(ParsedInput& in) {
    auto [l, c] = pos();
    expect('(');
    in.blocks.clear();
    do in.blocks.push_back(static_cast<std::size_t>(integer()));
    while (accept(','));
    expect(')');
    std::size_t total = 0;
    for (auto b : in.blocks) total += b;
    if (total != in.vars.size()) throw ParseError(l, c, "block sizes sum to " + std::to_string(total) + ", ring has " + std::to_string(in.vars.size()) + " variables");
  }

  void parse_ideal(ParsedInput& in) {
    in.has_ideal = true;
    expect('(');
    skip();
    if (accept(')')) return;
    do {
      skip();
      in.gen_positions.push_back(pos());
      in.gens.push_back(expr());
    } while (accept(','));
    expect(')');
  }

  RawPoly expr() {
    skip();
    bool neg = accept('-');
    if (!neg) accept('+');
    RawPoly acc = term();
    if (neg) acc = scale(acc, -1);
    while (true) {
      skip();
      if (accept('+')) acc = add(acc, term());
      else if (accept('-')) acc = add(acc, scale(term(), -1));
      else return acc;
    }
  }

  RawPoly term() {
    RawPoly acc = power();
    while (true) {
      skip();
      if (accept('*')) acc = mul(acc, power());
      else if (peek() == '/') {
        auto [l, c] = pos();
        advance();
        RawPoly d = power();
        if (d.size() != 1 || d.begin()->first != std::vector<Exponent>(n(), 0)) throw ParseError(l, c, "division only by nonzero constants");
        acc = scale(acc, 1 / d.begin()->second);
      } else return acc;
    }
  }

  RawPoly power() {
    RawPoly b = atom();
    skip();
    if (accept('^')) {
      long e = integer();
      RawPoly r = constant(1);
      for (long k = 0; k < e; ++k) r = mul(r, b);
      return r;
    }
    return b;
  }

  RawPoly atom() {
    skip();
    auto [l, c] = pos();
    if (accept('(')) {
      RawPoly r = expr();
      expect(')');
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(peek()))) return constant(mpq_class(integer_text()));
    if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
      std::string v = identifier("variable");
      auto it = std::find(vars_->begin(), vars_->end(), v);
      if (it == vars_->end()) throw ParseError(l, c, "unknown variable '" + v + "'");
      std::vector<Exponent> e(n(), 0);
      e[static_cast<std::size_t>(it - vars_->begin())] = 1;
      return RawPoly{{e, mpq_class(1)}};
    }
    throw ParseError(l, c, at_end() ? "unexpected end of input" : std::string("unexpected character '") + peek() + "'");
  }

  std::size_t n() const { return vars_->size(); }
  RawPoly constant(const mpq_class& c) const {
    if (sgn(c) == 0) return {};
    return RawPoly{{std::vector<Exponent>(n(), 0), c}};
  }
  static RawPoly scale(RawPoly p, const mpq_class& c) {
    if (sgn(c) == 0) return {};
    for (auto& [_, v] : p) v *= c;
    return p;
  }
  static RawPoly add(RawPoly a, const RawPoly& b) {
    for (const auto& [e, c] : b) {
      auto& v = a[e];
      v += c;
      if (sgn(v) == 0) a.erase(e);
    }
    return a;
  }
  static RawPoly mul(const RawPoly& a, const RawPoly& b) {
    RawPoly r;
    for (const auto& [ea, ca] : a)
      for (const auto& [eb, cb] : b) {
        std::vector<Exponent> e(ea);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        auto& v = r[e];
        v += ca * cb;
        if (sgn(v) == 0) r.erase(e);
      }
    return r;
  }

  // lexical layer
  bool at_end() const { return i_ >= src_.size(); }
  char peek() const { return at_end() ? '\0' : src_[i_]; }
  std::pair<std::size_t, std::size_t> pos() {
    skip();
    return {line_, col_};
  }

  void skip() {
    while (!at_end()) {
      char ch = src_[i_];
      if (ch == '#') {
        while (!at_end() && src_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else {
        break;
      }
    }
  }
  void advance() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }
  bool accept(char ch) {
    skip();
    if (peek() != ch) return false;
    advance();
    return true;
  }
  void expect(char ch) {
    skip();
    if (!accept(ch)) {
      auto [l, c] = pos();
      throw ParseError(l, c, std::string("expected '") + ch + "'" + (at_end() ? " before end of input" : std::string(", found '") + peek() + "'"));
    }
  }
  std::string identifier(const std::string& what) {
    skip();
    auto [l, c] = pos();
    if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) throw ParseError(l, c, "expected " + what);
    std::string s;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
      s += peek();
      advance();
    }
    return s;
  }
  std::string integer_text() {
    skip();
    auto [l, c] = pos();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError(l, c, "expected an integer");
    std::string s;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      s += peek();
      advance();
    }
    return s;
  }
  long integer() {
    auto [l, c] = pos();
    auto s = integer_text();
    if (s.size() > 12) throw ParseError(l, c, "integer too large");
    return std::stol(s);
  }
  std::int64_t signed_integer() {
    bool neg = accept('-');
    long v = integer();
    return neg ? -v : v;
  }

  std::string_view src_;
  std::size_t i_ = 0, line_ = 1, col_ = 1;
  const std::vector<std::string>* vars_ = nullptr;
};

}  // namespace detail

inline ParsedInput parse_input(std::string_view text) { return detail::Parser(text).run(); }

}  // namespace quadgb
