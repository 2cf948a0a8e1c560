#include "confalg/builders.hpp"

#include <bit>

#include "confalg/error.hpp"

namespace confalg {

namespace {

const RingSpec kConst = RingSpec::constant();

ConfElement term(int g, int m, const Scalar &c) {
  return ConfElement::term(kConst, g, m, c);
}

int sign_of(int k) { return k % 2 ? -1 : 1; }

} // namespace

// ---------------------------------------------------------------------------
// Lie superalgebras and current algebras

std::vector<Scalar> LieStructConsts::bracket(int i, int j) const {
  std::vector<Scalar> out(static_cast<size_t>(dim()));
  if (auto it = brackets.find({i, j}); it != brackets.end()) {
    for (const auto &[k, c] : it->second)
      out[static_cast<size_t>(k)] += c;
  } else if (auto rt = brackets.find({j, i}); rt != brackets.end()) {
    const int s = -parity_sign(parities[static_cast<size_t>(i)],
                               parities[static_cast<size_t>(j)]);
    for (const auto &[k, c] : rt->second)
      out[static_cast<size_t>(k)] += c * Scalar(s);
  }
  return out;
}

namespace {

std::vector<Scalar> bracket_vec(const LieStructConsts &g, const std::vector<Scalar> &x,
                                int j) {
  std::vector<Scalar> out(static_cast<size_t>(g.dim()));
  for (int i = 0; i < g.dim(); ++i) {
    if (x[static_cast<size_t>(i)].is_zero())
      continue;
    auto b = g.bracket(i, j);
    for (int k = 0; k < g.dim(); ++k)
      out[static_cast<size_t>(k)] += x[static_cast<size_t>(i)] * b[static_cast<size_t>(k)];
  }
  return out;
}

std::vector<Scalar> bracket_vec(const LieStructConsts &g, int i,
                                const std::vector<Scalar> &y) {
  std::vector<Scalar> out(static_cast<size_t>(g.dim()));
  for (int j = 0; j < g.dim(); ++j) {
    if (y[static_cast<size_t>(j)].is_zero())
      continue;
    auto b = g.bracket(i, j);
    for (int k = 0; k < g.dim(); ++k)
      out[static_cast<size_t>(k)] += y[static_cast<size_t>(j)] * b[static_cast<size_t>(k)];
  }
  return out;
}

} // namespace

std::optional<std::string> LieStructConsts::jacobi_failure() const {
  for (const auto &[ij, terms] : brackets) {
    const Parity want = parities[static_cast<size_t>(ij.first)] +
                        parities[static_cast<size_t>(ij.second)];
    for (const auto &[k, c] : terms)
      if (!c.is_zero() && parities[static_cast<size_t>(k)] != want)
        return "bracket [" + names[ij.first] + ", " + names[ij.second] +
               "] is not parity homogeneous";
    if (brackets.count({ij.second, ij.first})) {
      auto a = bracket(ij.first, ij.second);
      auto b = bracket(ij.second, ij.first);
      const int s = -parity_sign(parities[ij.first], parities[ij.second]);
      for (int k = 0; k < dim(); ++k)
        if (!(a[k] == b[k] * Scalar(s)))
          return "antisymmetry fails on [" + names[ij.first] + ", " +
                 names[ij.second] + "]";
    }
  }
  for (int x = 0; x < dim(); ++x)
    for (int y = 0; y < dim(); ++y)
      for (int z = 0; z < dim(); ++z) {
        auto lhs = bracket_vec(*this, x, bracket(y, z));
        auto r1 = bracket_vec(*this, bracket(x, y), z);
        auto r2 = bracket_vec(*this, y, bracket(x, z));
        const int s = parity_sign(parities[x], parities[y]);
        for (int k = 0; k < dim(); ++k)
          if (!(lhs[k] == r1[k] + r2[k] * Scalar(s)))
            return "Jacobi fails on (" + names[x] + ", " + names[y] + ", " +
                   names[z] + ")";
      }
  return std::nullopt;
}

LieStructConsts sl2_consts() {
  LieStructConsts g;
  g.names = {"e", "f", "h"};
  g.parities = {Parity::Even, Parity::Even, Parity::Even};
  g.brackets[{0, 1}] = {{2, Scalar(1)}};
  g.brackets[{2, 0}] = {{0, Scalar(2)}};
  g.brackets[{2, 1}] = {{1, Scalar(-2)}};
  return g;
}

LieStructConsts abelian_consts() {
  LieStructConsts g;
  g.names = {"x"};
  g.parities = {Parity::Even};
  return g;
}

StructureTable build_current(const LieStructConsts &g, const std::string &name) {
  if (auto f = g.jacobi_failure())
    throw InvalidArgument("not a Lie superalgebra: " + *f);
  StructureTable::Builder b(name, GeneratorBasis(g.names, g.parities));
  for (const auto &[ij, terms] : g.brackets) {
    ConfElement v(kConst);
    for (const auto &[k, c] : terms)
      v += term(k, 0, c);
    b.set(ij.first, ij.second, 0, v);
  }
  b.close_with_zero();
  return b.build();
}

// ---------------------------------------------------------------------------
// N = 4

Scalar pauli(int i, int p, int q) {
  if (i < 1 || i > 3 || p < 1 || p > 2 || q < 1 || q > 2)
    throw InvalidArgument("Pauli index out of range");
  switch (i) {
  case 1:
    return p != q ? Scalar(1) : Scalar(0);
  case 2:
    if (p == q)
      return Scalar(0);
    return p == 1 ? -Scalar::i() : Scalar::i();
  default:
    if (p != q)
      return Scalar(0);
    return p == 1 ? Scalar(1) : Scalar(-1);
  }
}

namespace {

int levi_civita(int i, int j, int l) {
  return (i - j) * (j - l) * (l - i) / 2;
}

} // namespace

StructureTable build_N4() {
  using namespace n4;
  GeneratorBasis basis({"L", "T1", "T2", "T3", "G1", "G2", "Gb1", "Gb2"},
                       {Parity::Even, Parity::Even, Parity::Even, Parity::Even,
                        Parity::Odd, Parity::Odd, Parity::Odd, Parity::Odd});
  StructureTable::Builder b("n4", basis);
  const int T[3] = {T1, T2, T3};
  const int G[2] = {G1, G2};
  const int Gb[2] = {Gb1, Gb2};

  // [L_lam L] = (D + 2 lam) L
  b.set(L, L, 0, term(L, 1, 1));
  b.set(L, L, 1, term(L, 0, 2));
  // [L_lam T] = (D + lam) T, [L_lam G] = (D + 3/2 lam) G
  for (int t : T) {
    b.set(L, t, 0, term(t, 1, 1));
    b.set(L, t, 1, term(t, 0, 1));
  }
  for (int g : {G1, G2, Gb1, Gb2}) {
    b.set(L, g, 0, term(g, 1, 1));
    b.set(L, g, 1, term(g, 0, Scalar(3, 2)));
  }
  // [T^i_lam T^j] = i eps_ijl T^l
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      ConfElement v(kConst);
      for (int l = 1; l <= 3; ++l)
        if (int e = levi_civita(i, j, l))
          v += term(T[l - 1], 0, Scalar::i() * Scalar(e));
      b.set(T[i - 1], T[j - 1], 0, v);
    }
  // [T^i_lam G^p] = -1/2 sum_q s^i_pq G^q, [T^i_lam Gb^p] = 1/2 sum_q s^i_qp Gb^q
  for (int i = 1; i <= 3; ++i)
    for (int p = 1; p <= 2; ++p) {
      ConfElement vg(kConst), vb(kConst);
      for (int q = 1; q <= 2; ++q) {
        vg += term(G[q - 1], 0, Scalar(-1, 2) * pauli(i, p, q));
        vb += term(Gb[q - 1], 0, Scalar(1, 2) * pauli(i, q, p));
      }
      b.set(T[i - 1], G[p - 1], 0, vg);
      b.set(T[i - 1], Gb[p - 1], 0, vb);
    }
  // [G^p_lam Gb^q] = 2 d_pq L - 2 (D + 2 lam) sum_i s^i_pq T^i
  for (int p = 1; p <= 2; ++p)
    for (int q = 1; q <= 2; ++q) {
      ConfElement v0(kConst), v1(kConst);
      if (p == q)
        v0 += term(L, 0, 2);
      for (int i = 1; i <= 3; ++i) {
        v0 += term(T[i - 1], 1, Scalar(-2) * pauli(i, p, q));
        v1 += term(T[i - 1], 0, Scalar(-4) * pauli(i, p, q));
      }
      b.set(G[p - 1], Gb[q - 1], 0, v0);
      b.set(G[p - 1], Gb[q - 1], 1, v1);
    }
  // [G_lam G] = [Gb_lam Gb] = 0
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) {
      b.declare(G[p], G[q]);
      b.declare(Gb[p], Gb[q]);
    }
  b.close_with_zero();
  return b.build();
}

// ---------------------------------------------------------------------------
// Grassmann algebras and K_N

GrassmannElement GrassmannElement::monomial(int n, unsigned mask, const Scalar &c) {
  GrassmannElement e(n);
  e.add(mask, c);
  return e;
}

void GrassmannElement::add(unsigned mask, const Scalar &c) {
  if (mask >> n_)
    throw InvalidArgument("Grassmann monomial uses a variable beyond N");
  if (c.is_zero())
    return;
  auto [it, inserted] = terms_.try_emplace(mask, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      terms_.erase(it);
  }
}

namespace {

// sign of xi_S xi_T rewritten in increasing order: (-1)^(pairs s in S, t in T, s > t)
int merge_sign(unsigned s, unsigned t) {
  int inversions = 0;
  for (unsigned rest = t; rest; rest &= rest - 1) {
    unsigned low = rest & (~rest + 1);
    inversions += std::popcount(s & ~((low << 1) - 1));
  }
  return sign_of(inversions);
}

} // namespace

GrassmannElement grassmann_mul(const GrassmannElement &f, const GrassmannElement &g) {
  if (f.n() != g.n())
    throw SpecMismatch("Grassmann algebras of different rank");
  GrassmannElement out(f.n());
  for (const auto &[a, ca] : f.terms())
    for (const auto &[b, cb] : g.terms()) {
      if (a & b)
        continue;
      out.add(a | b, ca * cb * Scalar(merge_sign(a, b)));
    }
  return out;
}

GrassmannElement grassmann_deriv(const GrassmannElement &f, int i) {
  if (i < 1 || i > f.n())
    throw InvalidArgument("Grassmann derivative index out of range");
  const unsigned bit = 1u << (i - 1);
  GrassmannElement out(f.n());
  for (const auto &[a, c] : f.terms()) {
    if (!(a & bit))
      continue;
    out.add(a & ~bit, c * Scalar(sign_of(std::popcount(a & (bit - 1)))));
  }
  return out;
}

std::vector<unsigned> grassmann_monomials(int n) {
  std::vector<unsigned> out;
  for (int deg = 0; deg <= n; ++deg) {
    std::vector<unsigned> level;
    for (unsigned m = 0; m < (1u << n); ++m)
      if (std::popcount(m) == deg)
        level.push_back(m);
    // lexicographic on the increasing index lists
    std::sort(level.begin(), level.end(), [](unsigned a, unsigned b) {
      while (a && b) {
        unsigned la = a & (~a + 1), lb = b & (~b + 1);
        if (la != lb)
          return la < lb;
        a &= a - 1;
        b &= b - 1;
      }
      return false;
    });
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::string grassmann_name(unsigned mask) {
  if (mask == 0)
    return "one";
  std::string s;
  for (int i = 0; i < 32; ++i)
    if (mask & (1u << i))
      s += "xi" + std::to_string(i + 1);
  return s;
}

StructureTable build_KN(int n) {
  if (n < 1 || n > 3)
    throw InvalidArgument("K_N is built for N = 1, 2, 3");
  const auto monos = grassmann_monomials(n);
  std::vector<std::string> names;
  std::vector<Parity> parities;
  std::map<unsigned, int> index;
  for (unsigned m : monos) {
    index[m] = static_cast<int>(names.size());
    names.push_back(grassmann_name(m));
    parities.push_back(std::popcount(m) % 2 ? Parity::Odd : Parity::Even);
  }
  StructureTable::Builder b("k" + std::to_string(n), GeneratorBasis(names, parities));

  auto to_element = [&](const GrassmannElement &e, int dpow, const Scalar &scale) {
    ConfElement v(kConst);
    for (const auto &[mask, c] : e.terms())
      v += term(index.at(mask), dpow, c * scale);
    return v;
  };

  for (unsigned fm : monos)
    for (unsigned gm : monos) {
      const int df = std::popcount(fm), dg = std::popcount(gm);
      auto f = GrassmannElement::monomial(n, fm);
      auto g = GrassmannElement::monomial(n, gm);
      auto fg = grassmann_mul(f, g);
      ConfElement p0 = to_element(fg, 1, Scalar(df, 2) - Scalar(1));
      for (int i = 1; i <= n; ++i)
        p0 += to_element(
            grassmann_mul(grassmann_deriv(f, i), grassmann_deriv(g, i)), 0,
            Scalar(sign_of(df), 2));
      ConfElement p1 = to_element(fg, 0, Scalar(df + dg, 2) - Scalar(2));
      const int i = index.at(fm), j = index.at(gm);
      b.declare(i, j);
      b.set(i, j, 0, p0);
      b.set(i, j, 1, p1);
    }
  return b.build();
}

StructureTable build_K2_alt() {
  using namespace k2alt;
  GeneratorBasis basis({"dxi", "xidxi", "one", "xi"},
                       {Parity::Odd, Parity::Even, Parity::Even, Parity::Odd});
  StructureTable::Builder b("k2-alt", basis);
  // a(n)b = delta_n0 [a, b] in Der(Lambda(1))
  b.set(xidxi, dxi, 0, term(dxi, 0, -1));
  b.set(dxi, xidxi, 0, term(dxi, 0, 1));
  b.declare(dxi, dxi);
  b.declare(xidxi, xidxi);
  // a(0)f = a(f); a(1)f = -(-1)^(p(a)p(f)) f a
  b.set(dxi, xi, 0, term(one, 0, 1));
  b.set(xidxi, xi, 0, term(xi, 0, 1));
  b.set(dxi, one, 1, term(dxi, 0, -1));
  b.set(dxi, xi, 1, term(xidxi, 0, 1));
  b.set(xidxi, one, 1, term(xidxi, 0, -1));
  b.declare(xidxi, xi);
  // f(0)g = -D(fg), f(1)g = -2 fg
  b.set(one, one, 0, term(one, 1, -1));
  b.set(one, one, 1, term(one, 0, -2));
  b.set(one, xi, 0, term(xi, 1, -1));
  b.set(one, xi, 1, term(xi, 0, -2));
  b.set(xi, one, 0, term(xi, 1, -1));
  b.set(xi, one, 1, term(xi, 0, -2));
  b.declare(xi, xi);
  return b.build();
}

std::optional<StructureTable> builtin_algebra(const std::string &name) {
  if (name == "n4")
    return build_N4();
  if (name == "cur-sl2")
    return build_current(sl2_consts(), "cur-sl2");
  if (name == "cur-abelian")
    return build_current(abelian_consts(), "cur-abelian");
  if (name == "k1")
    return build_KN(1);
  if (name == "k2")
    return build_KN(2);
  if (name == "k3")
    return build_KN(3);
  if (name == "k2-alt")
    return build_K2_alt();
  return std::nullopt;
}

std::vector<std::string> builtin_names() {
  return {"n4", "cur-sl2", "cur-abelian", "k1", "k2", "k3", "k2-alt"};
}

} // namespace confalg
