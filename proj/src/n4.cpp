#include "confalg/n4.hpp"

#include <cctype>

#include "confalg/builders.hpp"
#include "confalg/error.hpp"

namespace confalg {

Mat2::Mat2(RingElement a_, RingElement b_, RingElement c_, RingElement d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
  if (!(a.spec() == b.spec()) || !(a.spec() == c.spec()) || !(a.spec() == d.spec()))
    throw SpecMismatch("matrix entries over different rings");
}

Mat2 Mat2::identity(const RingSpec &spec) { return scalar(spec, Scalar(1)); }
Mat2 Mat2::zero(const RingSpec &spec) { return scalar(spec, Scalar(0)); }

Mat2 Mat2::scalar(const RingSpec &spec, const Scalar &s) {
  return Mat2(RingElement(spec, s), RingElement(spec), RingElement(spec),
              RingElement(spec, s));
}

Mat2 Mat2::pauli(const RingSpec &spec, int i) {
  return Mat2(RingElement(spec, confalg::pauli(i, 1, 1)),
              RingElement(spec, confalg::pauli(i, 1, 2)),
              RingElement(spec, confalg::pauli(i, 2, 1)),
              RingElement(spec, confalg::pauli(i, 2, 2)));
}

RingElement Mat2::det() const { return a * d - b * c; }
RingElement Mat2::trace() const { return a + d; }

bool Mat2::is_constant() const {
  return confalg::is_constant(a) && confalg::is_constant(b) &&
         confalg::is_constant(c) && confalg::is_constant(d);
}

Mat2 Mat2::operator-() const { return Mat2(-a, -b, -c, -d); }

Mat2 &Mat2::operator+=(const Mat2 &o) {
  a += o.a;
  b += o.b;
  c += o.c;
  d += o.d;
  return *this;
}

Mat2 &Mat2::operator-=(const Mat2 &o) {
  a -= o.a;
  b -= o.b;
  c -= o.c;
  d -= o.d;
  return *this;
}

Mat2 operator*(const Mat2 &x, const Mat2 &y) {
  return Mat2(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
              x.c * y.b + x.d * y.d);
}

Mat2 operator*(const RingElement &r, const Mat2 &x) {
  return Mat2(r * x.a, r * x.b, r * x.c, r * x.d);
}

Mat2 operator*(const Scalar &s, const Mat2 &x) {
  return Mat2(x.a * s, x.b * s, x.c * s, x.d * s);
}

std::string Mat2::to_string() const {
  return "[[" + a.to_string() + ", " + b.to_string() + "], [" + c.to_string() +
         ", " + d.to_string() + "]]";
}

Mat2 mat_delta(const Mat2 &m) {
  return Mat2(delta(m.a), delta(m.b), delta(m.c), delta(m.d));
}

Mat2 dagger(const Mat2 &m) { return Mat2(-m.d, m.b, m.c, -m.a); }

Mat2 commutator(const Mat2 &x, const Mat2 &y) { return x * y - y * x; }

std::optional<Mat2> mat_inverse(const Mat2 &m) {
  auto inv = inverse_if_unit(m.det());
  if (!inv)
    return std::nullopt;
  return *inv * Mat2(m.d, -m.b, -m.c, m.a);
}

Mat2 embed(const Mat2 &m, const RingSpec &target) {
  return Mat2(embed(m.a, target), embed(m.b, target), embed(m.c, target),
              embed(m.d, target));
}

Mat2 parse_matrix(const std::string &text, const RingSpec &spec) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)))
      s += ch;
  auto bad = [&](const std::string &m) -> ParseError {
    return ParseError(m + " in matrix '" + text + "' (expected [[a,b],[c,d]])", 1, 1);
  };
  if (s.size() < 4 || s.compare(0, 2, "[[") != 0 || s.compare(s.size() - 2, 2, "]]") != 0)
    throw bad("missing brackets");
  std::string inner = s.substr(2, s.size() - 4);
  auto mid = inner.find("],[");
  if (mid == std::string::npos || inner.find("],[", mid + 1) != std::string::npos)
    throw bad("expected two rows");
  std::string rows[2] = {inner.substr(0, mid), inner.substr(mid + 3)};
  std::vector<RingElement> entries;
  for (const auto &row : rows) {
    int depth = 0;
    size_t split = std::string::npos;
    for (size_t k = 0; k < row.size(); ++k) {
      if (row[k] == '(')
        ++depth;
      else if (row[k] == ')')
        --depth;
      else if (row[k] == ',' && depth == 0) {
        if (split != std::string::npos)
          throw bad("too many entries");
        split = k;
      }
    }
    if (split == std::string::npos)
      throw bad("expected two entries per row");
    entries.push_back(parse_ring_element(row.substr(0, split), spec));
    entries.push_back(parse_ring_element(row.substr(split + 1), spec));
  }
  return Mat2(entries[0], entries[1], entries[2], entries[3]);
}

// ---------------------------------------------------------------------------
// L/T/G notation

LTGTriple::LTGTriple(RingElement r, Mat2 x, Mat2 m)
    : r_(std::move(r)), x_(std::move(x)), m_(std::move(m)) {
  if (!(r_.spec() == x_.spec()) || !(r_.spec() == m_.spec()))
    throw SpecMismatch("triple components over different rings");
  if (!x_.trace().is_zero())
    throw InvalidArgument("T(X) needs a traceless X");
}

LTGTriple LTGTriple::zero(const RingSpec &spec) {
  return LTGTriple(RingElement(spec), Mat2::zero(spec), Mat2::zero(spec));
}

ConfElement L_of(const RingElement &r) {
  return ConfElement::term(r.spec(), n4::L, 0, r);
}

ConfElement T_of(const Mat2 &x) {
  if (!x.trace().is_zero())
    throw InvalidArgument("T(X) needs a traceless X");
  const RingSpec &s = x.spec();
  const Scalar i = Scalar::i();
  ConfElement e(s);
  e.add_term(n4::T1, 0, x.b + x.c);
  e.add_term(n4::T2, 0, (x.b - x.c) * i);
  e.add_term(n4::T3, 0, x.a * Scalar(2));
  return e;
}

ConfElement G_of(const Mat2 &m) {
  const RingSpec &s = m.spec();
  const Scalar i = Scalar::i();
  ConfElement e(s);
  e.add_term(n4::G1, 0, m.d * -i);
  e.add_term(n4::Gb1, 0, m.a * -i);
  e.add_term(n4::G2, 0, m.b * i);
  e.add_term(n4::Gb2, 0, m.c * -i);
  return e;
}

ConfElement encode(const LTGTriple &t) {
  return L_of(t.r()) + T_of(t.X()) + G_of(t.M());
}

LTGTriple decode(const ConfElement &e) {
  const RingSpec &s = e.spec();
  std::vector<RingElement> c(8, RingElement(s));
  for (const auto &[k, r] : e.terms()) {
    if (k.first < 0 || k.first >= 8)
      throw InvalidArgument("not an element of the N=4 algebra");
    if (k.second != 0)
      throw InvalidArgument("element has a D-power and lies outside V (x) R");
    c[static_cast<size_t>(k.first)] = r;
  }
  const Scalar i = Scalar::i(), half(1, 2);
  RingElement y = (c[n4::T1] - c[n4::T2] * i) * half;
  RingElement z = (c[n4::T1] + c[n4::T2] * i) * half;
  RingElement x = c[n4::T3] * half;
  Mat2 X(x, y, z, -x);
  Mat2 M(c[n4::Gb1] * i, c[n4::G2] * -i, c[n4::Gb2] * i, c[n4::G1] * i);
  return LTGTriple(c[n4::L], X, M);
}

// ---------------------------------------------------------------------------
// matrix-form brackets

namespace {

// (D + k lam) e with D the module derivation
LambdaPoly d_plus(const ConfElement &e, const Scalar &k) {
  LambdaPoly p(e.spec());
  p.add(0, e.shifted(1));
  p.add(1, e * k);
  return p;
}

LambdaPoly constant_poly(const ConfElement &e) {
  LambdaPoly p(e.spec());
  p.add(0, e);
  return p;
}

// [b_lam a] from [a_lam b] = sum lam^n c_n: -p(a,b) sum_n (-lam - Dhat)^n c_n
LambdaPoly skew(const LambdaPoly &ab, int sign) {
  LambdaPoly out(ab.spec());
  for (const auto &[n, c] : ab.coeffs())
    for (int k = 0; k <= n; ++k) {
      Scalar coef = binomial(n, k) * Scalar(-sign * (n % 2 ? -1 : 1));
      out.add(k, apply_dhat(c, n - k) * coef);
    }
  return out;
}

LambdaPoly bracket_LL(const RingElement &r, const RingElement &s) {
  return d_plus(L_of(r * s), Scalar(2)) + constant_poly(L_of(delta(r) * s) * Scalar(2));
}

LambdaPoly bracket_LT(const RingElement &r, const Mat2 &y) {
  return d_plus(T_of(r * y), Scalar(1)) + constant_poly(T_of(delta(r) * y));
}

LambdaPoly bracket_LG(const RingElement &r, const Mat2 &n) {
  return d_plus(G_of(r * n), Scalar(3, 2)) +
         constant_poly(G_of(delta(r) * n) * Scalar(3, 2));
}

LambdaPoly bracket_TT(const Mat2 &x, const Mat2 &y) {
  return constant_poly(T_of(commutator(x, y)));
}

LambdaPoly bracket_TG(const Mat2 &x, const Mat2 &n) { return constant_poly(G_of(x * n)); }

LambdaPoly bracket_GG(const Mat2 &m, const Mat2 &n) {
  const Mat2 nd = dagger(n);
  LambdaPoly p = constant_poly(L_of((m * nd).trace()) * Scalar(2));
  p += d_plus(T_of(m * nd - n * dagger(m)), Scalar(2));
  p += constant_poly(T_of(mat_delta(m) * nd - n * mat_delta(dagger(m))) * Scalar(2));
  return p;
}

} // namespace

LambdaPoly structured_bracket(const LTGTriple &u, const LTGTriple &v) {
  if (!(u.spec() == v.spec()))
    throw SpecMismatch("triples over different rings");
  LambdaPoly out(u.spec());
  out += bracket_LL(u.r(), v.r());
  out += bracket_LT(u.r(), v.X());
  out += bracket_LG(u.r(), v.M());
  out += skew(bracket_LT(v.r(), u.X()), 1);
  out += bracket_TT(u.X(), v.X());
  out += bracket_TG(u.X(), v.M());
  out += skew(bracket_LG(v.r(), u.M()), 1);
  out += skew(bracket_TG(v.X(), u.M()), 1);
  out += bracket_GG(u.M(), v.M());
  return out;
}

} // namespace confalg
