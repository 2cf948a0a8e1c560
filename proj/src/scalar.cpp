#include "confalg/scalar.hpp"

#include <cctype>

#include "confalg/error.hpp"

namespace confalg {

Scalar::Scalar(const mpq_class &re, const mpq_class &im) : re_(re), im_(im) {
  re_.canonicalize();
  im_.canonicalize();
}

Scalar::Scalar(long num, long den) {
  if (den == 0)
    throw DivisionByZero();
  re_ = mpq_class(num, den);
  re_.canonicalize();
}

Scalar &Scalar::operator+=(const Scalar &o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar &Scalar::operator-=(const Scalar &o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar &Scalar::operator*=(const Scalar &o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar &Scalar::operator/=(const Scalar &o) { return *this *= o.inv(); }

Scalar Scalar::inv() const {
  if (is_zero())
    throw DivisionByZero();
  if (sgn(im_) == 0)
    return Scalar(mpq_class(1) / re_);
  mpq_class norm = re_ * re_ + im_ * im_;
  return Scalar(re_ / norm, -im_ / norm);
}

namespace {

std::string rational_string(const mpq_class &q) { return q.get_str(); }

} // namespace

std::string Scalar::to_string() const {
  const bool has_re = sgn(re_) != 0;
  const bool has_im = sgn(im_) != 0;
  if (!has_im)
    return rational_string(re_);
  std::string imag;
  mpq_class mag = abs(im_);
  if (mag == 1)
    imag = "i";
  else
    imag = rational_string(mag) + " i";
  if (!has_re)
    return (sgn(im_) < 0 ? "-" : "") + imag;
  return rational_string(re_) + (sgn(im_) < 0 ? " - " : " + ") + imag;
}

std::ostream &operator<<(std::ostream &os, const Scalar &s) {
  return os << s.to_string();
}

Scalar add(const Scalar &a, const Scalar &b) { return a + b; }
Scalar mul(const Scalar &a, const Scalar &b) { return a * b; }
Scalar inv(const Scalar &a) { return a.inv(); }

std::optional<mpq_class> rational_sqrt(const mpq_class &q) {
  if (sgn(q) < 0)
    return std::nullopt;
  const mpz_class &num = q.get_num();
  const mpz_class &den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) ||
      !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  mpq_class r(rn, rd);
  r.canonicalize();
  return r;
}

// (a + b i)^2 = x + y i gives a^2 - b^2 = x, 2ab = y, so with
// m = |x + y i| we need a^2 = (m + x)/2 and b^2 = (m - x)/2.
std::optional<Scalar> sqrt_if_exists(const Scalar &z) {
  if (z.is_zero())
    return Scalar();
  const mpq_class &x = z.re();
  const mpq_class &y = z.im();
  auto m = rational_sqrt(x * x + y * y);
  if (!m)
    return std::nullopt;
  auto a = rational_sqrt((*m + x) / 2);
  auto b = rational_sqrt((*m - x) / 2);
  if (!a || !b)
    return std::nullopt;
  mpq_class bb = *b;
  if (sgn(y) < 0)
    bb = -bb;
  Scalar root(*a, bb);
  Scalar other = -root;
  return lex_less(other, root) ? other : root;
}

Scalar factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Scalar(mpq_class(f));
}

Scalar binomial(int n, int k) {
  if (k < 0 || k > n)
    return Scalar();
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return Scalar(mpq_class(b));
}

namespace {

class ScalarParser {
public:
  explicit ScalarParser(const std::string &text) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c)))
        s_ += c;
    // whitespace positions are not meaningful after stripping; report
    // columns relative to the stripped text
  }

  Scalar parse() {
    if (s_.empty())
      fail("empty scalar");
    Scalar value = sum();
    if (pos_ != s_.size())
      fail(std::string("unexpected '") + s_[pos_] + "'");
    return value;
  }

private:
  Scalar sum() {
    Scalar total;
    bool first = true;
    while (pos_ < s_.size() && s_[pos_] != ')') {
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail(std::string("expected '+' or '-' before '") + s_[pos_] + "'");
      }
      Scalar t = term();
      total += sign > 0 ? t : -t;
      first = false;
    }
    if (first)
      fail("empty scalar");
    return total;
  }

  Scalar term() {
    if (pos_ >= s_.size())
      fail("missing term");
    if (s_[pos_] == '(') {
      ++pos_;
      Scalar inner = sum();
      expect(')');
      return inner;
    }
    if (s_[pos_] == 'i') {
      ++pos_;
      return Scalar::i();
    }
    mpq_class q = number();
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      mpq_class d = number();
      if (sgn(d) == 0)
        fail("zero denominator");
      q /= d;
    }
    if (pos_ < s_.size() && s_[pos_] == 'i') {
      ++pos_;
      return Scalar(mpq_class(0), q);
    }
    return Scalar(q);
  }

  mpq_class number() {
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (start == pos_)
      fail(pos_ < s_.size() ? std::string("unexpected '") + s_[pos_] + "'"
                            : std::string("expected a number"));
    return mpq_class(mpz_class(s_.substr(start, pos_ - start)));
  }

  void expect(char c) {
    if (pos_ >= s_.size() || s_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string &m) const {
    throw ParseError(m, 1, static_cast<int>(pos_) + 1);
  }

  std::string s_;
  size_t pos_ = 0;
};

} // namespace

Scalar parse_scalar(const std::string &text) { return ScalarParser(text).parse(); }

} // namespace confalg
