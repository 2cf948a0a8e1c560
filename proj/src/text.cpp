#include "confalg/text.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "confalg/error.hpp"

namespace confalg {

namespace {

const char *const kTensor = "\xE2\x8A\x97"; // ⊗

// Sign pulled out of a scalar: negative when re < 0, or re = 0 and im < 0.
bool split_sign(const Scalar &c, Scalar &magnitude) {
  bool neg = sgn(c.re()) < 0 || (sgn(c.re()) == 0 && sgn(c.im()) < 0);
  magnitude = neg ? -c : c;
  return neg;
}

std::string scalar_factor(const Scalar &c) {
  std::string s = c.to_string();
  if (!c.is_real() && !(c == Scalar::i()) && !(c == -Scalar::i()))
    return "(" + s + ")";
  return s;
}

std::string power(const char *name, int k) {
  if (k == 1)
    return name;
  return std::string(name) + "^" + std::to_string(k);
}

// (lam-power, D-power) -> coefficient
using Coefficient = std::map<std::pair<int, int>, Scalar>;

std::string monomial(const Scalar &magnitude, int lam, int d) {
  std::string factors;
  if (d > 0)
    factors = power("D", d);
  if (lam > 0)
    factors += (factors.empty() ? "" : "*") + power("lam", lam);
  if (factors.empty())
    return scalar_factor(magnitude);
  if (magnitude.is_one())
    return factors;
  return scalar_factor(magnitude) + "*" + factors;
}

std::string polynomial(const Coefficient &coeff) {
  std::string out;
  bool first = true;
  for (const auto &[k, c] : coeff) {
    Scalar mag;
    bool neg = split_sign(c, mag);
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    out += monomial(mag, k.first, k.second);
    first = false;
  }
  return out;
}

std::string render_grouped(const GeneratorBasis &basis, const RingSpec &spec,
                           const std::map<std::pair<int, long>, Coefficient> &groups,
                           RenderOptions opts) {
  if (groups.empty())
    return "0";
  const std::string tensor = opts.ascii ? "(x)" : kTensor;
  const bool show_ring = spec.kind != RingSpec::Kind::Const;
  std::string out;
  bool first = true;
  for (const auto &[key, coeff] : groups) {
    std::string gen = basis.name(key.first);
    if (show_ring)
      gen += tensor + ring_monomial_string(-key.second, spec.denominator());
    bool neg = false;
    std::string body;
    if (coeff.size() == 1) {
      const auto &[k, c] = *coeff.begin();
      Scalar mag;
      neg = split_sign(c, mag);
      if (k.first == 0 && k.second == 0 && mag.is_one())
        body = gen;
      else
        body = monomial(mag, k.first, k.second) + " " + gen;
    } else {
      body = "(" + polynomial(coeff) + ") " + gen;
    }
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    out += body;
    first = false;
  }
  return out;
}

void collect(std::map<std::pair<int, long>, Coefficient> &groups, int lam,
             const ConfElement &a) {
  for (const auto &[k, r] : a.terms())
    for (const auto &[e, c] : r.terms()) {
      // descending ring exponent within a generator
      Scalar &slot = groups[{k.first, -e}][{lam, k.second}];
      slot += c;
    }
}

} // namespace

std::string ring_monomial_string(long num, int den) {
  if (num == 0)
    return "1";
  if (num == den)
    return "t";
  if (num % den == 0)
    return "t^" + std::to_string(num / den);
  return "t^(" + exponent_string(num, den) + ")";
}

std::string render(const GeneratorBasis &basis, const LambdaPoly &p,
                   RenderOptions opts) {
  std::map<std::pair<int, long>, Coefficient> groups;
  for (const auto &[n, c] : p.coeffs())
    collect(groups, n, c);
  return render_grouped(basis, p.spec(), groups, opts);
}

std::string render(const GeneratorBasis &basis, const ConfElement &a,
                   RenderOptions opts) {
  std::map<std::pair<int, long>, Coefficient> groups;
  collect(groups, 0, a);
  return render_grouped(basis, a.spec(), groups, opts);
}

// ---------------------------------------------------------------------------
// parsing

namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

bool reserved(const std::string &w) { return w == "D" || w == "i"; }

class TermParser {
public:
  TermParser(const std::string &text, int line, int column0,
             const GeneratorBasis &basis, const RingSpec &spec, bool allow_ring,
             const TermFunction &functions)
      : s_(text), line_(line), col0_(column0), basis_(basis), spec_(spec),
        allow_ring_(allow_ring), functions_(functions) {}

  ConfElement parse() {
    ConfElement total(spec_);
    skip();
    if (at_end())
      fail("empty expression");
    bool first = true;
    while (true) {
      skip();
      if (at_end())
        break;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail(std::string("expected '+' or '-' before '") + peek() + "'");
      }
      ConfElement t = term();
      if (sign < 0)
        t = -t;
      total += t;
      first = false;
    }
    return total;
  }

private:
  // Signed sum of `[scalar] [*] [D^m]` monomials, as rendered inside
  // parentheses in front of a generator. D-power -> coefficient.
  std::map<int, Scalar> d_polynomial() {
    std::map<int, Scalar> out;
    bool first = true;
    while (true) {
      skip();
      if (at_end())
        break;
      Scalar sign(1);
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? Scalar(-1) : Scalar(1);
        ++pos_;
        skip();
      } else if (!first) {
        fail(std::string("expected '+' or '-' before '") + peek() + "'");
      }
      std::optional<Scalar> c = scalar();
      skip();
      if (c && !at_end() && peek() == '*') {
        ++pos_;
        skip();
      }
      int m = 0;
      if (word_ahead() == "D")
        m = d_power();
      else if (!c)
        fail("expected a scalar or D");
      out[m] += sign * c.value_or(Scalar(1));
      first = false;
    }
    if (first)
      fail("empty coefficient");
    return out;
  }

  bool is_scalar_text(const std::string &text) const {
    try {
      parse_scalar(text);
      return true;
    } catch (const Error &) {
      return false;
    }
  }

  int d_power() {
    pos_ += 1;
    int dpow = 1;
    if (!at_end() && peek() == '^') {
      ++pos_;
      size_t ds = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
        ++pos_;
      if (ds == pos_)
        fail("expected a D-power");
      dpow = std::stoi(s_.substr(ds, pos_ - ds));
    }
    return dpow;
  }

  ConfElement term() {
    if (!at_end() && peek() == '(') {
      size_t close = matching(pos_);
      std::string inner = s_.substr(pos_ + 1, close - pos_ - 1);
      if (!is_scalar_text(inner)) {
        TermParser sub(inner, line_, col0_ + static_cast<int>(pos_ + 1), basis_, spec_,
                       false, functions_);
        std::map<int, Scalar> poly = sub.d_polynomial();
        pos_ = close + 1;
        skip();
        if (!at_end() && peek() == '*') {
          ++pos_;
          skip();
        }
        const ConfElement base = generator_part(0);
        ConfElement total(spec_);
        for (const auto &[m, c] : poly)
          total += base.shifted(m) * c;
        return total;
      }
    }
    std::optional<Scalar> coeff = scalar();
    skip();
    if (coeff && !at_end() && peek() == '*') {
      ++pos_;
      skip();
    }
    int dpow = 0;
    bool has_d = false;
    if (word_ahead() == "D") {
      has_d = true;
      dpow = d_power();
      skip();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip();
      }
    }
    if (word_ahead().empty() && coeff && !has_d && coeff->is_zero())
      return ConfElement(spec_);
    ConfElement value = generator_part(dpow);
    if (coeff)
      value *= *coeff;
    return value;
  }

  // `gen [⊗ ring]` or `name(argument)`, shifted by D^dpow
  ConfElement generator_part(int dpow) {
    std::string gen = word_ahead();
    if (gen.empty()) {
      if (at_end())
        fail("expected a generator");
      fail(std::string("expected a generator, found '") + peek() + "'");
    }
    const size_t gen_pos = pos_;
    pos_ += gen.size();

    ConfElement value(spec_);
    if (functions_ && !at_end() && peek() == '(' && s_.compare(pos_, 3, "(x)") != 0) {
      size_t close = matching(pos_);
      std::string arg = s_.substr(pos_ + 1, close - pos_ - 1);
      std::optional<ConfElement> f;
      try {
        f = functions_(gen, arg);
      } catch (const ParseError &e) {
        fail_at(pos_ + 1, e.bare_message());
      } catch (const Error &e) {
        fail_at(pos_ + 1, e.what());
      }
      if (!f)
        fail_at(gen_pos, "unknown function '" + gen + "'");
      pos_ = close + 1;
      value = f->shifted(dpow);
    } else {
      if (reserved(gen))
        fail_at(gen_pos, "'" + gen + "' is reserved");
      auto g = basis_.index_of(gen);
      if (!g)
        fail_at(gen_pos, "unknown generator '" + gen + "'");
      RingElement r(spec_, Scalar(1));
      skip();
      if (tensor_ahead()) {
        if (!allow_ring_)
          fail("ring factors are not allowed here");
        r = ring();
      }
      value = ConfElement::term(spec_, *g, dpow, r);
    }
    return value;
  }

  std::optional<Scalar> scalar() {
    if (at_end())
      return std::nullopt;
    if (peek() == '(') {
      size_t close = matching(pos_);
      std::string inner = s_.substr(pos_ + 1, close - pos_ - 1);
      Scalar v = sub_scalar(inner, pos_ + 1);
      pos_ = close + 1;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      size_t st = pos_;
      while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) ||
                           peek() == '/'))
        ++pos_;
      std::string num = s_.substr(st, pos_ - st);
      size_t save = pos_;
      skip();
      if (word_ahead() == "i") {
        pos_ += 1;
        num += "i";
      } else {
        pos_ = save;
      }
      return sub_scalar(num, st);
    }
    if (word_ahead() == "i") {
      pos_ += 1;
      return Scalar::i();
    }
    return std::nullopt;
  }

  Scalar sub_scalar(const std::string &text, size_t at) {
    try {
      return parse_scalar(text);
    } catch (const ParseError &e) {
      fail_at(at, e.bare_message());
    }
  }

  bool tensor_ahead() {
    if (s_.compare(pos_, 3, kTensor) == 0) {
      pos_ += 3;
      return true;
    }
    if (s_.compare(pos_, 3, "(x)") == 0) {
      pos_ += 3;
      return true;
    }
    return false;
  }

  RingElement ring() {
    skip();
    if (at_end())
      fail("expected a ring element");
    size_t st = pos_;
    std::string text;
    if (peek() == '(') {
      size_t close = matching(pos_);
      text = s_.substr(pos_ + 1, close - pos_ - 1);
      st = pos_ + 1;
      pos_ = close + 1;
    } else {
      if (peek() == '+' || peek() == '-')
        ++pos_;
      // a single monomial: stop at a sign that follows whitespace
      while (!at_end()) {
        char c = peek();
        if ((c == '+' || c == '-') && pos_ > st &&
            std::isspace(static_cast<unsigned char>(s_[pos_ - 1])))
          break;
        ++pos_;
      }
      text = s_.substr(st, pos_ - st);
    }
    try {
      return parse_ring_element(text, spec_);
    } catch (const ParseError &e) {
      fail_at(st, e.bare_message());
    } catch (const Error &e) {
      fail_at(st, e.what());
    }
  }

  size_t matching(size_t open) {
    int depth = 0;
    for (size_t k = open; k < s_.size(); ++k) {
      if (s_[k] == '(' || s_[k] == '[')
        ++depth;
      else if (s_[k] == ')' || s_[k] == ']') {
        if (--depth == 0)
          return k;
      }
    }
    fail_at(open, "unbalanced parenthesis");
  }

  std::string word_ahead() const {
    if (at_end() || !ident_start(peek()))
      return "";
    size_t e = pos_;
    while (e < s_.size() && ident_char(s_[e]))
      ++e;
    return s_.substr(pos_, e - pos_);
  }

  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
      ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }

  [[noreturn]] void fail(const std::string &m) const { fail_at(pos_, m); }
  [[noreturn]] void fail_at(size_t at, const std::string &m) const {
    throw ParseError(m, line_, col0_ + static_cast<int>(at));
  }

  const std::string &s_;
  size_t pos_ = 0;
  int line_;
  int col0_;
  const GeneratorBasis &basis_;
  RingSpec spec_;
  bool allow_ring_;
  const TermFunction &functions_;
};

} // namespace

ConfElement parse_element(const GeneratorBasis &basis, const RingSpec &spec,
                          const std::string &text, const TermFunction &functions) {
  return TermParser(text, 1, 1, basis, spec, true, functions).parse();
}

// ---------------------------------------------------------------------------
// algebra files

namespace {

struct Token {
  std::string text;
  int column;
};

std::vector<Token> split_words(const std::string &line) {
  std::vector<Token> out;
  size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k])))
      ++k;
    if (k >= line.size())
      break;
    size_t st = k;
    while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k])))
      ++k;
    out.push_back({line.substr(st, k - st), static_cast<int>(st) + 1});
  }
  return out;
}

bool valid_name(const std::string &w) {
  if (w.empty() || !ident_start(w[0]))
    return false;
  for (char c : w)
    if (!ident_char(c))
      return false;
  return true;
}

struct PendingProduct {
  int line;
  int column;
  std::string a, b;
  int col_a, col_b;
  int n;
  std::string rhs;
  int rhs_column;
};

} // namespace

StructureTable parse_algebra(const std::string &text) {
  std::string name;
  std::vector<std::string> names;
  std::vector<Parity> parities;
  std::vector<PendingProduct> prods;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto h = line.find('#'); h != std::string::npos)
      line = line.substr(0, h);
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    auto words = split_words(line);
    if (words.empty())
      continue;
    const std::string &kw = words[0].text;
    if (kw == "algebra") {
      if (words.size() != 2)
        throw ParseError("expected 'algebra <name>'", lineno, words[0].column);
      if (!name.empty())
        throw ParseError("algebra name given twice", lineno, words[0].column);
      name = words[1].text;
    } else if (kw == "generator") {
      if (words.size() != 3)
        throw ParseError("expected 'generator <name> even|odd'", lineno,
                         words[0].column);
      const std::string &g = words[1].text;
      if (!valid_name(g))
        throw ParseError("invalid generator name '" + g + "'", lineno,
                         words[1].column);
      if (reserved(g))
        throw ParseError("'" + g + "' is reserved", lineno, words[1].column);
      for (const auto &existing : names)
        if (existing == g)
          throw ParseError("duplicate generator '" + g + "'", lineno,
                           words[1].column);
      if (!prods.empty())
        throw ParseError("generators must be declared before products", lineno,
                         words[0].column);
      Parity p;
      if (words[2].text == "even")
        p = Parity::Even;
      else if (words[2].text == "odd")
        p = Parity::Odd;
      else
        throw ParseError("expected 'even' or 'odd'", lineno, words[2].column);
      names.push_back(g);
      parities.push_back(p);
    } else if (kw == "prod") {
      if (words.size() < 6 || words[4].text != "=")
        throw ParseError("expected 'prod <g1> <g2> <n> = <terms>'", lineno,
                         words[0].column);
      PendingProduct pp;
      pp.line = lineno;
      pp.column = words[0].column;
      pp.a = words[1].text;
      pp.col_a = words[1].column;
      pp.b = words[2].text;
      pp.col_b = words[2].column;
      const std::string &nt = words[3].text;
      bool digits = !nt.empty() && nt.size() < 6;
      for (char c : nt)
        digits = digits && std::isdigit(static_cast<unsigned char>(c));
      if (!digits)
        throw ParseError("expected a nonnegative product index", lineno,
                         words[3].column);
      pp.n = std::stoi(nt);
      pp.rhs_column = words[5].column;
      pp.rhs = line.substr(static_cast<size_t>(words[5].column - 1));
      prods.push_back(std::move(pp));
    } else {
      throw ParseError("unknown directive '" + kw + "'", lineno, words[0].column);
    }
  }
  if (name.empty())
    name = "unnamed";

  GeneratorBasis basis(names, parities);
  StructureTable::Builder b(name, basis);
  std::set<std::tuple<int, int, int>> seen;
  for (const auto &pp : prods) {
    auto i = basis.index_of(pp.a);
    if (!i)
      throw ParseError("unknown generator '" + pp.a + "'", pp.line, pp.col_a);
    auto j = basis.index_of(pp.b);
    if (!j)
      throw ParseError("unknown generator '" + pp.b + "'", pp.line, pp.col_b);
    if (!seen.insert({*i, *j, pp.n}).second)
      throw ParseError("product given twice", pp.line, pp.column);
    ConfElement v = TermParser(pp.rhs, pp.line, pp.rhs_column, basis,
                               RingSpec::constant(), false, nullptr)
                        .parse();
    const Parity want = basis.parity(*i) + basis.parity(*j);
    for (const auto &[k, r] : v.terms())
      if (basis.parity(k.first) != want)
        throw ParseError("term " + basis.name(k.first) +
                             " has the wrong parity for this product",
                         pp.line, pp.rhs_column);
    b.set(*i, *j, pp.n, v);
  }
  b.close_with_zero();
  return b.build();
}

namespace {

std::string dsl_terms(const GeneratorBasis &basis, const ConfElement &v) {
  std::string out;
  bool first = true;
  for (const auto &[k, r] : v.terms()) {
    Scalar mag;
    bool neg = split_sign(r.constant_term(), mag);
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string body;
    if (!mag.is_one())
      body = scalar_factor(mag) + " ";
    if (k.second == 1)
      body += "D ";
    else if (k.second > 1)
      body += "D^" + std::to_string(k.second) + " ";
    out += body + basis.name(k.first);
    first = false;
  }
  return out;
}

bool all_zero(const StructureTable::Products &p) {
  for (const auto &e : p)
    if (!e.is_zero())
      return false;
  return true;
}

} // namespace

std::string print_algebra(const StructureTable &table) {
  const GeneratorBasis &basis = table.basis();
  std::ostringstream out;
  out << "algebra " << table.name() << "\n";
  for (int g = 0; g < basis.size(); ++g)
    out << "generator " << basis.name(g) << " "
        << (basis.parity(g) == Parity::Even ? "even" : "odd") << "\n";
  for (const auto &[ij, prods] : table.stored()) {
    const auto [i, j] = ij;
    const std::string head =
        "prod " + basis.name(i) + " " + basis.name(j) + " ";
    if (all_zero(prods)) {
      // only needed when it overrides a nonzero transpose
      if (i != j && table.is_stored(j, i) && !all_zero(table.stored().at({j, i})))
        out << head << "0 = 0\n";
      continue;
    }
    for (size_t n = 0; n < prods.size(); ++n)
      if (!prods[n].is_zero())
        out << head << n << " = " << dsl_terms(basis, prods[n]) << "\n";
  }
  return out.str();
}

} // namespace confalg
