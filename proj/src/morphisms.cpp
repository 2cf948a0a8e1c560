#include "confalg/morphisms.hpp"

#include <algorithm>

#include "confalg/builders.hpp"
#include "confalg/error.hpp"

namespace confalg {

TablePtr n4_table() {
  static const TablePtr t = std::make_shared<const StructureTable>(build_N4());
  return t;
}

TablePtr k2_alt_table() {
  static const TablePtr t = std::make_shared<const StructureTable>(build_K2_alt());
  return t;
}

// ---------------------------------------------------------------------------
// ConfMorphism

ConfMorphism::ConfMorphism(TablePtr table, RingSpec spec, std::vector<ConfElement> images)
    : table_(std::move(table)), spec_(spec), images_(std::move(images)) {
  if (!table_)
    throw InvalidArgument("morphism without a table");
  if (static_cast<int>(images_.size()) != table_->size())
    throw InvalidArgument("morphism needs one image per generator");
  for (const auto &im : images_) {
    if (!(im.spec() == spec_))
      throw SpecMismatch("image over " + im.spec().name() + ", morphism over " +
                         spec_.name());
    for (const auto &[k, r] : im.terms())
      if (k.first < 0 || k.first >= table_->size())
        throw InvalidArgument("image refers to an unknown generator");
  }
}

ConfMorphism ConfMorphism::identity(TablePtr table, RingSpec spec) {
  std::vector<ConfElement> images;
  for (int g = 0; g < table->size(); ++g)
    images.push_back(ConfElement::generator(spec, g));
  return ConfMorphism(std::move(table), spec, std::move(images));
}

ConfElement ConfMorphism::apply(const ConfElement &x) const {
  if (!(x.spec() == spec_))
    throw SpecMismatch("argument over " + x.spec().name() + ", morphism over " +
                       spec_.name());
  ConfElement out(spec_);
  for (const auto &[k, r] : x.terms())
    out += apply_dhat(image(k.first), k.second) * r;
  return out;
}

LambdaPoly ConfMorphism::apply(const LambdaPoly &p) const {
  LambdaPoly out(spec_);
  for (const auto &[n, c] : p.coeffs())
    out.add(n, apply(c));
  return out;
}

bool ConfMorphism::is_identity() const {
  for (int g = 0; g < table_->size(); ++g)
    if (!(image(g) == ConfElement::generator(spec_, g)))
      return false;
  return true;
}

bool ConfMorphism::is_V_stable() const {
  for (const auto &im : images_)
    if (im.max_dpow() > 0)
      return false;
  return true;
}

bool operator==(const ConfMorphism &a, const ConfMorphism &b) {
  if (a.table_ != b.table_ && !(*a.table_ == *b.table_))
    return false;
  return a.spec_ == b.spec_ && a.images_ == b.images_;
}

ConfMorphism compose(const ConfMorphism &phi, const ConfMorphism &psi) {
  if (!(phi.spec() == psi.spec()))
    throw SpecMismatch("composing morphisms over different rings");
  if (phi.table_ptr() != psi.table_ptr() && !(phi.table() == psi.table()))
    throw SpecMismatch("composing morphisms of different algebras");
  std::vector<ConfElement> images;
  for (const auto &im : psi.images())
    images.push_back(phi.apply(im));
  return ConfMorphism(phi.table_ptr(), phi.spec(), std::move(images));
}

ConfMorphism embed(const ConfMorphism &phi, const RingSpec &target) {
  std::vector<ConfElement> images;
  for (const auto &im : phi.images())
    images.push_back(embed(im, target));
  return ConfMorphism(phi.table_ptr(), target, std::move(images));
}

// ---------------------------------------------------------------------------
// SL2 pairs and theta

SL2Pair::SL2Pair(Mat2 a, Mat2 b) : A(std::move(a)), B(std::move(b)) {
  if (!(A.spec() == B.spec()))
    throw SpecMismatch("A and B over different rings");
}

std::optional<std::string> SL2Pair::violation() const {
  if (!A.det().is_one())
    return "det(A) = " + A.det().to_string() + ", expected 1";
  if (!B.det().is_one())
    return "det(B) = " + B.det().to_string() + ", expected 1";
  if (!B.is_constant())
    return "B has non-constant entries";
  return std::nullopt;
}

SL2Pair operator*(const SL2Pair &p, const SL2Pair &q) {
  return SL2Pair(p.A * q.A, p.B * q.B);
}

SL2Pair embed(const SL2Pair &p, const RingSpec &target) {
  return SL2Pair(embed(p.A, target), embed(p.B, target));
}

namespace {

ConfMorphism theta_images(const Mat2 &A, const Mat2 &Ainv, const Mat2 &Binv) {
  const RingSpec spec = A.spec();
  const Mat2 x0 = mat_delta(A) * Ainv;
  std::vector<ConfElement> images;
  for (int g = 0; g < 8; ++g) {
    LTGTriple t = decode(ConfElement::generator(spec, g));
    images.push_back(L_of(t.r()) + T_of(t.r() * x0) + T_of(A * t.X() * Ainv) +
                     G_of(A * t.M() * Binv));
  }
  return ConfMorphism(n4_table(), spec, std::move(images));
}

} // namespace

ConfMorphism theta(const SL2Pair &p) {
  if (auto v = p.violation())
    throw InvalidArgument("not an SL2 pair: " + *v);
  return theta_images(p.A, -dagger(p.A), -dagger(p.B));
}

ConfMorphism theta_formula(const Mat2 &A, const Mat2 &B) {
  return theta_images(A, -dagger(A), -dagger(B));
}

ConfMorphism conjugation(const Mat2 &A, const Mat2 &B) {
  if (!(A.spec() == RingSpec::constant()) || !(B.spec() == RingSpec::constant()))
    throw InvalidArgument("conjugation is defined over the constant ring");
  auto ai = mat_inverse(A);
  auto bi = mat_inverse(B);
  if (!ai || !bi)
    throw InvalidArgument("conjugation needs invertible matrices");
  return theta_images(A, *ai, *bi);
}

// ---------------------------------------------------------------------------
// matrices over R

namespace {

RingMatrix mat_mul(const RingMatrix &x, const RingMatrix &y, const RingSpec &spec) {
  const size_t n = x.size();
  RingMatrix out(n, std::vector<RingElement>(n, RingElement(spec)));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (x[i][k].is_zero())
        continue;
      for (size_t j = 0; j < n; ++j)
        if (!y[k][j].is_zero())
          out[i][j] += x[i][k] * y[k][j];
    }
  return out;
}

// Faddeev-LeVerrier: returns (det, adjugate)
std::pair<RingElement, RingMatrix> det_adj(const RingMatrix &a) {
  const size_t n = a.size();
  if (n == 0)
    throw InvalidArgument("empty matrix");
  const RingSpec spec = a[0][0].spec();
  RingMatrix m(n, std::vector<RingElement>(n, RingElement(spec)));
  RingElement c(spec, Scalar(1));
  for (size_t k = 1; k <= n; ++k) {
    RingMatrix next = mat_mul(a, m, spec);
    for (size_t i = 0; i < n; ++i)
      next[i][i] += c;
    m = std::move(next);
    RingMatrix am = mat_mul(a, m, spec);
    RingElement tr(spec);
    for (size_t i = 0; i < n; ++i)
      tr += am[i][i];
    c = tr * Scalar(-1, static_cast<long>(k));
  }
  const Scalar sn(n % 2 ? -1 : 1);
  RingElement det = c * sn;
  for (auto &row : m)
    for (auto &e : row)
      e = e * -sn;
  return {det, m};
}

} // namespace

RingElement ring_det(const RingMatrix &m) { return det_adj(m).first; }

std::optional<RingMatrix> ring_inverse(const RingMatrix &m) {
  auto [det, adj] = det_adj(m);
  auto inv = inverse_if_unit(det);
  if (!inv)
    return std::nullopt;
  for (auto &row : adj)
    for (auto &e : row)
      e = e * *inv;
  return adj;
}

// ---------------------------------------------------------------------------
// automorphism check

AutomorphismReport is_conf_automorphism(const ConfMorphism &phi,
                                        const std::optional<ConfMorphism> &inverse_witness) {
  using Status = AutomorphismReport::Status;
  AutomorphismReport rep;
  const StructureTable &t = phi.table();
  const GeneratorBasis &basis = t.basis();
  const RingSpec &spec = phi.spec();
  const int size = t.size();

  for (int g = 0; g < size; ++g) {
    const ConfElement &im = phi.image(g);
    if (im.is_zero()) {
      rep.status = Status::NotAutomorphism;
      rep.detail = "image of " + basis.name(g) + " is zero";
      return rep;
    }
    auto p = element_parity(basis, im);
    if (!p || *p != basis.parity(g)) {
      rep.status = Status::NotAutomorphism;
      rep.detail = "image of " + basis.name(g) + " has the wrong parity";
      return rep;
    }
  }

  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) {
      const ConfElement a = ConfElement::generator(spec, i);
      const ConfElement b = ConfElement::generator(spec, j);
      LambdaPoly lhs = phi.apply(lambda_bracket(t, a, b));
      LambdaPoly rhs = lambda_bracket(t, phi.image(i), phi.image(j));
      if (!(lhs == rhs)) {
        rep.status = Status::NotAutomorphism;
        rep.witness = {i, j};
        rep.detail = "bracket of (" + basis.name(i) + ", " + basis.name(j) +
                     ") is not preserved";
        return rep;
      }
    }

  auto check_inverse = [&](const ConfMorphism &w) {
    return compose(phi, w).is_identity() && compose(w, phi).is_identity();
  };

  if (phi.is_V_stable()) {
    // parity-preserving, so the matrix is block diagonal by parity
    RingMatrix inv(static_cast<size_t>(size),
                   std::vector<RingElement>(static_cast<size_t>(size), RingElement(spec)));
    for (Parity par : {Parity::Even, Parity::Odd}) {
      std::vector<int> idx;
      for (int g = 0; g < size; ++g)
        if (basis.parity(g) == par)
          idx.push_back(g);
      if (idx.empty())
        continue;
      std::vector<int> pos(static_cast<size_t>(size), -1);
      for (size_t k = 0; k < idx.size(); ++k)
        pos[static_cast<size_t>(idx[k])] = static_cast<int>(k);
      RingMatrix m(idx.size(), std::vector<RingElement>(idx.size(), RingElement(spec)));
      for (size_t c = 0; c < idx.size(); ++c)
        for (const auto &[k, r] : phi.image(idx[c]).terms())
          m[static_cast<size_t>(pos[static_cast<size_t>(k.first)])][c] = r;
      auto block = ring_inverse(m);
      if (!block) {
        rep.status = Status::NotAutomorphism;
        rep.detail = std::string(par == Parity::Even ? "even" : "odd") +
                     " block determinant " + ring_det(m).to_string() + " is not a unit";
        return rep;
      }
      for (size_t r = 0; r < idx.size(); ++r)
        for (size_t c = 0; c < idx.size(); ++c)
          inv[static_cast<size_t>(idx[r])][static_cast<size_t>(idx[c])] = (*block)[r][c];
    }
    std::vector<ConfElement> images;
    for (int g = 0; g < size; ++g) {
      ConfElement e(spec);
      for (int h = 0; h < size; ++h)
        e.add_term(h, 0, inv[static_cast<size_t>(h)][static_cast<size_t>(g)]);
      images.push_back(e);
    }
    ConfMorphism w(phi.table_ptr(), spec, std::move(images));
    if (!check_inverse(w)) {
      rep.status = Status::NotAutomorphism;
      rep.detail = "adjugate inverse does not invert the map";
      return rep;
    }
    rep.inverse = w;
    rep.detail = "bracket-preserving, inverted by adjugate";
    return rep;
  }

  if (!inverse_witness) {
    rep.status = Status::Inconclusive;
    rep.detail = "bracket-preserving, but not V-stable and no inverse witness given";
    return rep;
  }
  if (!check_inverse(*inverse_witness)) {
    rep.status = Status::NotAutomorphism;
    rep.detail = "the given witness is not a two-sided inverse";
    return rep;
  }
  rep.inverse = inverse_witness;
  rep.detail = "bracket-preserving, inverse witness verified";
  return rep;
}

// ---------------------------------------------------------------------------
// kernel

KernelResult kernel_witness(const SL2Pair &p) {
  KernelResult res;
  ConfMorphism th = theta(p);
  for (int g = 0; g < 8; ++g)
    if (!(th.image(g) == ConfElement::generator(p.spec(), g))) {
      res.witness = g;
      return res;
    }
  const RingElement &a = p.A.a;
  const Mat2 aI(a, RingElement(p.spec()), RingElement(p.spec()), a);
  if (!(p.A == aI) || !(p.B == aI) || !(a * a).is_one() || !delta(a).is_zero())
    throw Error("theta is the identity on a pair outside mu_2: " + p.A.to_string());
  res.in_kernel = true;
  res.a = a;
  return res;
}

// ---------------------------------------------------------------------------
// factorization over the constants

namespace {

// Basis of the nullspace of a matrix over Q(i), by row reduction.
std::vector<std::vector<Scalar>> nullspace(std::vector<std::vector<Scalar>> rows, int cols) {
  std::vector<int> pivot_col;
  size_t r = 0;
  for (int c = 0; c < cols && r < rows.size(); ++c) {
    size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero())
      ++p;
    if (p == rows.size())
      continue;
    std::swap(rows[r], rows[p]);
    Scalar inv = rows[r][c].inv();
    for (auto &x : rows[r])
      x *= inv;
    for (size_t q = 0; q < rows.size(); ++q) {
      if (q == r || rows[q][c].is_zero())
        continue;
      Scalar f = rows[q][c];
      for (int k = 0; k < cols; ++k)
        rows[q][k] -= f * rows[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<std::vector<Scalar>> basis;
  for (int f = 0; f < cols; ++f) {
    if (std::find(pivot_col.begin(), pivot_col.end(), f) != pivot_col.end())
      continue;
    std::vector<Scalar> v(static_cast<size_t>(cols));
    v[f] = 1;
    for (size_t k = 0; k < pivot_col.size(); ++k)
      v[pivot_col[k]] = -rows[k][f];
    basis.push_back(v);
  }
  return basis;
}

Mat2 const_mat(const Scalar &a, const Scalar &b, const Scalar &c, const Scalar &d) {
  const RingSpec s = RingSpec::constant();
  return Mat2(RingElement(s, a), RingElement(s, b), RingElement(s, c), RingElement(s, d));
}

Scalar entry(const Mat2 &m, int k) {
  switch (k) {
  case 0:
    return m.a.constant_term();
  case 1:
    return m.b.constant_term();
  case 2:
    return m.c.constant_term();
  default:
    return m.d.constant_term();
  }
}

Mat2 unit_matrix(int k) {
  Scalar e[4];
  e[k] = 1;
  return const_mat(e[0], e[1], e[2], e[3]);
}

} // namespace

FactorizeResult factorize(const ConfMorphism &phi) {
  using Kind = FactorizeResult::Kind;
  FactorizeResult res;
  const RingSpec cst = RingSpec::constant();
  if (!(phi.spec() == cst))
    throw InvalidArgument("factorize works over the constant ring only");
  if (!(phi.table() == *n4_table()))
    throw InvalidArgument("factorize applies to the N=4 algebra");
  if (!phi.is_V_stable()) {
    res.detail = "map is not V-stable";
    return res;
  }

  // A sigma^i = X^i A with T(X^i) = phi(T(sigma^i))
  std::vector<std::vector<Scalar>> rows;
  for (int i = 1; i <= 3; ++i) {
    LTGTriple img = decode(phi.apply(T_of(Mat2::pauli(cst, i))));
    if (!img.r().is_zero() || !(img.M() == Mat2::zero(cst))) {
      res.detail = "image of T(sigma^" + std::to_string(i) + ") leaves the T-sector";
      return res;
    }
    const Mat2 s = Mat2::pauli(cst, i);
    std::vector<std::vector<Scalar>> block(4, std::vector<Scalar>(4));
    for (int k = 0; k < 4; ++k) {
      Mat2 e = unit_matrix(k);
      Mat2 v = e * s - img.X() * e;
      for (int q = 0; q < 4; ++q)
        block[q][k] = entry(v, q);
    }
    rows.insert(rows.end(), block.begin(), block.end());
  }
  auto ns = nullspace(rows, 4);
  if (ns.size() != 1) {
    res.detail = "conjugating matrix is not determined up to scalar (" +
                 std::to_string(ns.size()) + "-dimensional solution space)";
    return res;
  }
  Mat2 A0 = const_mat(ns[0][0], ns[0][1], ns[0][2], ns[0][3]);
  Scalar det0 = A0.det().constant_term();
  if (det0.is_zero()) {
    res.detail = "conjugating matrix is singular";
    return res;
  }
  auto root = sqrt_if_exists(det0);
  if (!root) {
    res.kind = Kind::ExtensionRequired;
    res.detail = "conjugating matrix " + A0.to_string() + " has determinant " +
                 det0.to_string() + ", which has no square root in Q(i)";
    return res;
  }
  Mat2 A = root->inv() * A0;
  Mat2 Ainv = -dagger(A);

  // G(M) -> G(A M C), C = B^-1
  LTGTriple gi = decode(phi.apply(G_of(Mat2::identity(cst))));
  Mat2 C = Ainv * gi.M();
  for (int k = 0; k < 4; ++k) {
    Mat2 e = unit_matrix(k);
    LTGTriple ge = decode(phi.apply(G_of(e)));
    if (!ge.r().is_zero() || !(ge.X() == Mat2::zero(cst)) || !(ge.M() == A * e * C)) {
      res.detail = "odd part is not of the form G(M) -> G(A M B^-1)";
      return res;
    }
  }
  if (!C.det().is_one()) {
    res.detail = "recovered B^-1 has determinant " + C.det().to_string();
    return res;
  }
  Mat2 B = -dagger(C);

  Scalar first;
  for (int k = 0; k < 4 && first.is_zero(); ++k)
    first = entry(A, k);
  if (lex_less(-first, first)) {
    A = -A;
    B = -B;
  }
  SL2Pair pair(A, B);
  if (!(theta(pair) == phi)) {
    res.detail = "theta(A, B) does not reproduce the map";
    return res;
  }
  res.kind = Kind::Pair;
  res.pair = pair;
  return res;
}

// ---------------------------------------------------------------------------

ConfMorphism k2_phi() {
  using namespace k2alt;
  const RingSpec cst = RingSpec::constant();
  std::vector<ConfElement> images(4, ConfElement(cst));
  images[one] = ConfElement::generator(cst, one) - ConfElement::term(cst, xidxi, 1, Scalar(1));
  images[xi] = ConfElement::generator(cst, dxi);
  images[dxi] = ConfElement::generator(cst, xi);
  images[xidxi] = ConfElement::generator(cst, xidxi) * Scalar(-1);
  return ConfMorphism(k2_alt_table(), cst, std::move(images));
}

} // namespace confalg
