#include "confalg/diffring.hpp"

#include <cctype>
#include <cstdlib>

#include "confalg/error.hpp"

namespace confalg {

RingSpec RingSpec::puiseux(int d) {
  if (d < 1)
    throw InvalidArgument("puiseux denominator must be positive");
  return {Kind::Puiseux, d};
}

RingSpec RingSpec::trunc(int n) {
  if (n < 1)
    throw InvalidArgument("truncation order must be positive");
  return {Kind::Trunc, n};
}

std::string RingSpec::name() const {
  switch (kind) {
  case Kind::Const:
    return "const";
  case Kind::Laurent:
    return "laurent";
  case Kind::Puiseux:
    return "puiseux:" + std::to_string(param);
  case Kind::Trunc:
    return "trunc:" + std::to_string(param);
  }
  return "?";
}

RingSpec RingSpec::parse(const std::string &text) {
  if (text == "const")
    return constant();
  if (text == "laurent")
    return laurent();
  auto colon = text.find(':');
  if (colon != std::string::npos) {
    std::string head = text.substr(0, colon);
    std::string tail = text.substr(colon + 1);
    bool digits = !tail.empty() && tail.size() < 6;
    for (char c : tail)
      digits = digits && std::isdigit(static_cast<unsigned char>(c));
    if (digits) {
      int v = std::atoi(tail.c_str());
      if (head == "puiseux")
        return puiseux(v);
      if (head == "trunc")
        return trunc(v);
    }
  }
  throw InvalidArgument("unknown ring spec '" + text +
                        "' (expected const, laurent, puiseux:D or trunc:N)");
}

RingElement::RingElement(RingSpec spec, const Scalar &c) : spec_(spec) {
  if (!c.is_zero())
    terms_.emplace(0, c);
}

RingElement RingElement::monomial(RingSpec spec, const Scalar &c, long num) {
  RingElement r(spec);
  switch (spec.kind) {
  case RingSpec::Kind::Const:
    if (num != 0)
      throw InvalidArgument("the constant ring has no powers of t");
    break;
  case RingSpec::Kind::Trunc:
    if (num < 0)
      throw InvalidArgument("negative power of t in a truncated ring");
    break;
  default:
    break;
  }
  r.add_term(num, c);
  return r;
}

void RingElement::add_term(long num, const Scalar &c) {
  if (c.is_zero())
    return;
  if (spec_.kind == RingSpec::Kind::Trunc && num >= spec_.param)
    return;
  auto [it, inserted] = terms_.try_emplace(num, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      terms_.erase(it);
  }
}

bool RingElement::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first == 0 &&
         terms_.begin()->second.is_one();
}

Scalar RingElement::constant_term() const {
  auto it = terms_.find(0);
  return it == terms_.end() ? Scalar() : it->second;
}

bool RingElement::is_scalar() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

RingElement RingElement::operator-() const {
  RingElement r(*this);
  for (auto &[e, c] : r.terms_)
    c = -c;
  return r;
}

static void require_same(const RingSpec &a, const RingSpec &b) {
  if (!(a == b))
    throw SpecMismatch("ring spec mismatch: " + a.name() + " vs " + b.name());
}

RingElement &RingElement::operator+=(const RingElement &o) {
  require_same(spec_, o.spec_);
  for (const auto &[e, c] : o.terms_)
    add_term(e, c);
  return *this;
}

RingElement &RingElement::operator-=(const RingElement &o) {
  require_same(spec_, o.spec_);
  for (const auto &[e, c] : o.terms_)
    add_term(e, -c);
  return *this;
}

RingElement &RingElement::operator*=(const Scalar &c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto &[e, v] : terms_)
    v *= c;
  return *this;
}

RingElement operator*(const RingElement &a, const RingElement &b) {
  require_same(a.spec_, b.spec_);
  RingElement r(a.spec_);
  if (a.is_zero() || b.is_zero())
    return r;
  for (const auto &[ea, ca] : a.terms_)
    for (const auto &[eb, cb] : b.terms_)
      r.add_term(ea + eb, ca * cb);
  return r;
}

std::string exponent_string(long num, int den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q.get_str();
}

std::string RingElement::to_string() const {
  if (terms_.empty())
    return "0";
  std::string out;
  bool first = true;
  for (const auto &[e, c] : terms_) {
    Scalar coeff = c;
    bool negative = sgn(c.re()) < 0 || (sgn(c.re()) == 0 && sgn(c.im()) < 0);
    if (negative)
      coeff = -c;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    std::string mono;
    if (e != 0) {
      mono = "t";
      if (e != spec_.denominator())
        mono += "^" + exponent_string(e, spec_.denominator());
    }
    std::string cs = coeff.to_string();
    if (!coeff.is_real() && coeff.re() != 0)
      cs = "(" + cs + ")";
    if (mono.empty())
      out += cs;
    else if (coeff.is_one())
      out += mono;
    else
      out += cs + " " + mono;
  }
  return out;
}

RingElement ring_add(const RingElement &a, const RingElement &b) { return a + b; }
RingElement ring_mul(const RingElement &a, const RingElement &b) { return a * b; }
RingElement ring_neg(const RingElement &a) { return -a; }

RingElement delta(const RingElement &r) {
  RingElement out(r.spec());
  if (r.spec().kind == RingSpec::Kind::Const)
    return out;
  const int den = r.spec().denominator();
  // d/dt does not descend to k[t]/(t^N); t d/dt does
  const int shift = r.spec().kind == RingSpec::Kind::Trunc ? 0 : den;
  for (const auto &[e, c] : r.terms()) {
    if (e == 0)
      continue;
    out.add_term(e - shift, c * Scalar(e, den));
  }
  return out;
}

RingElement delta_divided(const RingElement &r, int j) {
  RingElement out = r;
  for (int k = 1; k <= j && !out.is_zero(); ++k)
    out = delta(out) * Scalar(1, k);
  return out;
}

bool is_constant(const RingElement &r) { return delta(r).is_zero(); }

std::optional<RingElement> inverse_if_unit(const RingElement &r) {
  const RingSpec spec = r.spec();
  if (r.is_zero())
    return std::nullopt;
  if (spec.kind == RingSpec::Kind::Const)
    return RingElement(spec, r.constant_term().inv());

  if (spec.kind == RingSpec::Kind::Trunc) {
    Scalar c0 = r.constant_term();
    if (c0.is_zero())
      return std::nullopt;
    // r = c0 (1 + u) with u nilpotent; 1/(1+u) = sum (-u)^k, k < N
    RingElement u = r * c0.inv() - RingElement(spec, Scalar(1));
    RingElement neg_u = -u;
    RingElement power(spec, Scalar(1));
    RingElement sum(spec, Scalar(1));
    for (int k = 1; k < spec.param; ++k) {
      power = power * neg_u;
      if (power.is_zero())
        break;
      sum += power;
    }
    return sum * c0.inv();
  }

  // Laurent / Puiseux: long division from the lowest exponent, allowed to
  // run over twice the input's support width before giving up.
  const long low = r.terms().begin()->first;
  const long high = r.terms().rbegin()->first;
  const Scalar lead_inv = r.terms().begin()->second.inv();
  const long width = high - low;
  const long bound = 2 * std::max<long>(width, 1);
  RingElement quotient(spec);
  RingElement remainder(spec, Scalar(1));
  // each step cancels the lowest term of the remainder
  while (!remainder.is_zero()) {
    const auto [re, rc] = *remainder.terms().begin();
    const long qe = re - low;
    if (qe - (-low) > bound)
      return std::nullopt;
    RingElement step = RingElement::monomial(spec, rc * lead_inv, qe);
    quotient += step;
    remainder -= step * r;
  }
  return quotient;
}

RingElement embed(const RingElement &r, const RingSpec &target) {
  const RingSpec &src = r.spec();
  if (src == target)
    return r;
  if (src.kind == RingSpec::Kind::Const)
    return RingElement(target, r.constant_term());
  if (src.kind == RingSpec::Kind::Laurent &&
      target.kind == RingSpec::Kind::Puiseux) {
    RingElement out(target);
    for (const auto &[e, c] : r.terms())
      out.add_term(e * target.param, c);
    return out;
  }
  throw NoCanonicalMap("no canonical differential-ring map " + src.name() +
                       " -> " + target.name());
}

namespace {

class RingLiteralParser {
public:
  RingLiteralParser(const std::string &text, RingSpec spec) : spec_(spec) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c)))
        s_ += c;
  }

  RingElement parse() {
    if (s_.empty())
      fail("empty ring element");
    RingElement total(spec_);
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail(std::string("unexpected '") + s_[pos_] + "'");
      }
      RingElement t = term();
      total += sign > 0 ? t : -t;
      first = false;
    }
    return total;
  }

private:
  RingElement term() {
    Scalar coeff(1);
    bool have_coeff = false;
    if (pos_ < s_.size() && s_[pos_] == '(') {
      size_t close = matching(pos_);
      coeff = parse_sub(s_.substr(pos_ + 1, close - pos_ - 1));
      pos_ = close + 1;
      have_coeff = true;
    } else if (pos_ < s_.size() &&
               (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == 'i')) {
      size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
                                  s_[pos_] == '/'))
        ++pos_;
      if (pos_ < s_.size() && s_[pos_] == 'i')
        ++pos_;
      coeff = parse_sub(s_.substr(start, pos_ - start));
      have_coeff = true;
    }
    if (pos_ < s_.size() && s_[pos_] == '*')
      ++pos_;
    long num = 0;
    if (pos_ < s_.size() && s_[pos_] == 't') {
      ++pos_;
      num = spec_.denominator();
      if (pos_ < s_.size() && s_[pos_] == '^') {
        ++pos_;
        num = exponent();
      }
    } else if (!have_coeff) {
      fail(pos_ < s_.size() ? std::string("unexpected '") + s_[pos_] + "'"
                            : std::string("missing term"));
    }
    try {
      return RingElement::monomial(spec_, coeff, num);
    } catch (const InvalidArgument &e) {
      fail(e.what());
    }
  }

  // Returns the exponent as a numerator over the spec's denominator.
  long exponent() {
    bool paren = pos_ < s_.size() && s_[pos_] == '(';
    if (paren)
      ++pos_;
    int sign = 1;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      sign = -1;
      ++pos_;
    }
    long p = digits();
    long q = 1;
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      q = digits();
      if (q == 0)
        fail("zero denominator in exponent");
    }
    if (paren) {
      if (pos_ >= s_.size() || s_[pos_] != ')')
        fail("expected ')'");
      ++pos_;
    }
    const long den = spec_.denominator();
    if ((p * den) % q != 0)
      fail("exponent " + std::to_string(sign * p) + "/" + std::to_string(q) +
           " is not available in ring " + spec_.name());
    return sign * p * den / q;
  }

  long digits() {
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (start == pos_ || pos_ - start > 9)
      fail("expected an exponent");
    return std::atol(s_.substr(start, pos_ - start).c_str());
  }

  size_t matching(size_t open) const {
    int depth = 0;
    for (size_t k = open; k < s_.size(); ++k) {
      if (s_[k] == '(')
        ++depth;
      else if (s_[k] == ')' && --depth == 0)
        return k;
    }
    fail("unbalanced parenthesis");
  }

  Scalar parse_sub(const std::string &text) const {
    try {
      return parse_scalar(text);
    } catch (const ParseError &e) {
      fail(e.bare_message());
    }
  }

  [[noreturn]] void fail(const std::string &m) const {
    throw ParseError(m, 1, static_cast<int>(pos_) + 1);
  }

  RingSpec spec_;
  std::string s_;
  size_t pos_ = 0;
};

} // namespace

RingElement parse_ring_element(const std::string &text, const RingSpec &spec) {
  return RingLiteralParser(text, spec).parse();
}

} // namespace confalg
