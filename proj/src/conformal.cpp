#include "confalg/conformal.hpp"

#include <algorithm>
#include <set>

#include "confalg/error.hpp"

namespace confalg {

// ---------------------------------------------------------------------------
// GeneratorBasis

GeneratorBasis::GeneratorBasis(std::vector<std::string> names,
                               std::vector<Parity> parities)
    : names_(std::move(names)), parities_(std::move(parities)) {
  if (names_.size() != parities_.size())
    throw InvalidArgument("generator names and parities differ in length");
  std::set<std::string> seen;
  for (const auto &n : names_)
    if (!seen.insert(n).second)
      throw InvalidArgument("duplicate generator name '" + n + "'");
}

std::optional<int> GeneratorBasis::index_of(const std::string &name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end())
    return std::nullopt;
  return static_cast<int>(it - names_.begin());
}

// ---------------------------------------------------------------------------
// ConfElement

ConfElement ConfElement::term(RingSpec spec, int g, int m, const RingElement &r) {
  ConfElement e(spec);
  e.add_term(g, m, r);
  return e;
}

ConfElement ConfElement::term(RingSpec spec, int g, int m, const Scalar &c) {
  return term(spec, g, m, RingElement(spec, c));
}

ConfElement ConfElement::generator(RingSpec spec, int g) {
  return term(spec, g, 0, Scalar(1));
}

int ConfElement::max_dpow() const {
  int m = -1;
  for (const auto &[k, r] : terms_)
    m = std::max(m, k.second);
  return m;
}

void ConfElement::add_term(int g, int m, const RingElement &r) {
  if (r.is_zero())
    return;
  if (!(r.spec() == spec_))
    throw SpecMismatch("coefficient ring " + r.spec().name() +
                       " does not match element ring " + spec_.name());
  auto [it, inserted] = terms_.try_emplace({g, m}, r);
  if (!inserted) {
    it->second += r;
    if (it->second.is_zero())
      terms_.erase(it);
  }
}

ConfElement ConfElement::operator-() const {
  ConfElement out(*this);
  for (auto &[k, r] : out.terms_)
    r = -r;
  return out;
}

ConfElement &ConfElement::operator+=(const ConfElement &o) {
  if (!(o.spec_ == spec_))
    throw SpecMismatch("element ring mismatch: " + spec_.name() + " vs " +
                       o.spec_.name());
  for (const auto &[k, r] : o.terms_)
    add_term(k.first, k.second, r);
  return *this;
}

ConfElement &ConfElement::operator-=(const ConfElement &o) {
  if (!(o.spec_ == spec_))
    throw SpecMismatch("element ring mismatch: " + spec_.name() + " vs " +
                       o.spec_.name());
  for (const auto &[k, r] : o.terms_)
    add_term(k.first, k.second, -r);
  return *this;
}

ConfElement &ConfElement::operator*=(const Scalar &c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto &[k, r] : terms_)
    r *= c;
  return *this;
}

ConfElement &ConfElement::operator*=(const RingElement &r) {
  if (!(r.spec() == spec_))
    throw SpecMismatch("ring element " + r.spec().name() +
                       " does not match element ring " + spec_.name());
  Terms out;
  for (auto &[k, c] : terms_) {
    RingElement v = c * r;
    if (!v.is_zero())
      out.emplace(k, std::move(v));
  }
  terms_ = std::move(out);
  return *this;
}

ConfElement ConfElement::shifted(int j) const {
  ConfElement out(spec_);
  for (const auto &[k, r] : terms_)
    out.terms_.emplace(Key{k.first, k.second + j}, r);
  return out;
}

ConfElement ConfElement::tensor(const RingElement &r) const {
  ConfElement out(r.spec());
  if (r.is_zero())
    return out;
  for (const auto &[k, c] : terms_)
    out.add_term(k.first, k.second, r * c.constant_term());
  return out;
}

// ---------------------------------------------------------------------------
// LambdaPoly

ConfElement LambdaPoly::coeff(int n) const {
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? ConfElement(spec_) : it->second;
}

void LambdaPoly::add(int n, const ConfElement &c) {
  if (c.is_zero())
    return;
  auto [it, inserted] = coeffs_.try_emplace(n, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      coeffs_.erase(it);
  }
}

LambdaPoly &LambdaPoly::operator+=(const LambdaPoly &o) {
  for (const auto &[n, c] : o.coeffs_)
    add(n, c);
  return *this;
}

LambdaPoly &LambdaPoly::operator-=(const LambdaPoly &o) {
  for (const auto &[n, c] : o.coeffs_)
    add(n, -c);
  return *this;
}

LambdaPoly &LambdaPoly::operator*=(const Scalar &c) {
  if (c.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  for (auto &[n, e] : coeffs_)
    e *= c;
  return *this;
}

// ---------------------------------------------------------------------------
// StructureTable

StructureTable::Builder::Builder(std::string name, GeneratorBasis basis)
    : name_(std::move(name)), basis_(std::move(basis)) {}

int StructureTable::Builder::index(const std::string &name) const {
  auto g = basis_.index_of(name);
  if (!g)
    throw InvalidArgument("unknown generator '" + name + "'");
  return *g;
}

StructureTable::Builder &StructureTable::Builder::set(int i, int j, int n,
                                                      const ConfElement &value) {
  if (i < 0 || j < 0 || i >= basis_.size() || j >= basis_.size())
    throw InvalidArgument("generator index out of range");
  if (n < 0)
    throw InvalidArgument("negative product index");
  auto &prods = stored_[{i, j}];
  if (static_cast<int>(prods.size()) <= n)
    prods.resize(static_cast<size_t>(n) + 1, ConfElement(RingSpec::constant()));
  prods[static_cast<size_t>(n)] = value;
  return *this;
}

StructureTable::Builder &StructureTable::Builder::set(const std::string &a,
                                                      const std::string &b, int n,
                                                      const ConfElement &value) {
  return set(index(a), index(b), n, value);
}

StructureTable::Builder &StructureTable::Builder::declare(int i, int j) {
  if (i < 0 || j < 0 || i >= basis_.size() || j >= basis_.size())
    throw InvalidArgument("generator index out of range");
  stored_[{i, j}];
  return *this;
}

StructureTable::Builder &StructureTable::Builder::close_with_zero() {
  for (int i = 0; i < basis_.size(); ++i)
    for (int j = i; j < basis_.size(); ++j)
      if (!stored_.count({i, j}) && !stored_.count({j, i}))
        declare(i, j);
  return *this;
}

static void trim(StructureTable::Products &p) {
  while (!p.empty() && p.back().is_zero())
    p.pop_back();
}

StructureTable StructureTable::Builder::build() const {
  StructureTable t;
  t.name_ = name_;
  t.basis_ = basis_;
  t.stored_ = stored_;
  for (auto &[ij, prods] : t.stored_) {
    const Parity expected = basis_.parity(ij.first) + basis_.parity(ij.second);
    for (size_t n = 0; n < prods.size(); ++n) {
      if (!(prods[n].spec() == RingSpec::constant()))
        throw InvalidArgument("table entries must be over the constant ring");
      for (const auto &[k, c] : prods[n].terms()) {
        if (k.first < 0 || k.first >= basis_.size())
          throw InvalidArgument("table entry references an unknown generator");
        if (k.second < 0)
          throw InvalidArgument("negative D-power in table entry");
        if (basis_.parity(k.first) != expected)
          throw InvalidArgument("product " + basis_.name(ij.first) + "(" +
                                std::to_string(n) + ")" + basis_.name(ij.second) +
                                " is not parity homogeneous (term " +
                                basis_.name(k.first) + ")");
      }
    }
    trim(prods);
  }

  const int size = basis_.size();
  t.resolved_.assign(static_cast<size_t>(size),
                     std::vector<std::optional<Products>>(static_cast<size_t>(size)));
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) {
      auto it = t.stored_.find({i, j});
      if (it != t.stored_.end()) {
        t.resolved_[i][j] = it->second;
        continue;
      }
      auto rt = t.stored_.find({j, i});
      if (rt != t.stored_.end()) {
        Products p = skew_transform(
            rt->second, parity_sign(basis_.parity(i), basis_.parity(j)));
        trim(p);
        t.resolved_[i][j] = std::move(p);
      }
    }
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j)
      if (t.resolved_[i][j])
        t.max_support_ =
            std::max(t.max_support_, static_cast<int>(t.resolved_[i][j]->size()) - 1);
  return t;
}

bool StructureTable::is_defined(int i, int j) const {
  return resolved_.at(static_cast<size_t>(i)).at(static_cast<size_t>(j)).has_value();
}

const StructureTable::Products &StructureTable::products(int i, int j) const {
  const auto &r = resolved_.at(static_cast<size_t>(i)).at(static_cast<size_t>(j));
  if (!r)
    throw UndefinedProduct("product " + basis_.name(i) + "(n)" + basis_.name(j) +
                           " is not defined in either orientation");
  return *r;
}

ConfElement StructureTable::product(int i, int j, int n) const {
  const Products &p = products(i, j);
  if (n < 0 || n >= static_cast<int>(p.size()))
    return ConfElement(RingSpec::constant());
  return p[static_cast<size_t>(n)];
}

int StructureTable::support(int i, int j) const {
  return static_cast<int>(products(i, j).size()) - 1;
}

StructureTable::Products StructureTable::skew_from_transpose(int i, int j) const {
  Products p = skew_transform(products(j, i),
                              parity_sign(basis_.parity(i), basis_.parity(j)));
  trim(p);
  return p;
}

bool operator==(const StructureTable &a, const StructureTable &b) {
  if (!(a.basis_ == b.basis_))
    return false;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) {
      if (a.is_defined(i, j) != b.is_defined(i, j))
        return false;
      if (a.is_defined(i, j) && a.products(i, j) != b.products(i, j))
        return false;
    }
  return true;
}

StructureTable::Products skew_transform(const StructureTable::Products &transposed,
                                        int sign_ab) {
  const int len = static_cast<int>(transposed.size());
  StructureTable::Products out(static_cast<size_t>(std::max(len, 0)),
                               ConfElement(RingSpec::constant()));
  for (int n = 0; n < len; ++n) {
    ConfElement acc(RingSpec::constant());
    for (int j = 0; n + j < len; ++j) {
      const ConfElement &b_a = transposed[static_cast<size_t>(n + j)];
      if (b_a.is_zero())
        continue;
      Scalar c = factorial(j).inv() * Scalar(-sign_ab * (((j + n) % 2) ? -1 : 1));
      acc += b_a.shifted(j) * c;
    }
    out[static_cast<size_t>(n)] = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// products

namespace {

// N! / (N-k)!
Scalar falling(int N, int k) {
  Scalar r(1);
  for (int s = 0; s < k; ++s)
    r *= Scalar(N - s);
  return r;
}

// a_i(K)(D^l a_j) = sum_s C(l,s) K!/(K-s)! D^(l-s) (a_i(K-s) a_j)
ConfElement right_shifted(const StructureTable &table, int i, int j, int l, int K) {
  ConfElement out(RingSpec::constant());
  for (int s = 0; s <= std::min(l, K); ++s) {
    ConfElement p = table.product(i, j, K - s);
    if (p.is_zero())
      continue;
    out += p.shifted(l - s) * (binomial(l, s) * falling(K, s));
  }
  return out;
}

void check_index(const StructureTable &table, int g) {
  if (g < 0 || g >= table.size())
    throw SpecMismatch("element refers to generator " + std::to_string(g) +
                       " outside table " + table.name());
}

// delta^(j)(r) for j = 0..jmax, stopping early once zero.
std::vector<RingElement> divided_derivatives(const RingElement &r, int jmax) {
  std::vector<RingElement> out;
  out.reserve(static_cast<size_t>(jmax) + 1);
  out.push_back(r);
  for (int j = 1; j <= jmax; ++j) {
    RingElement next = delta(out.back()) * Scalar(1, j);
    if (next.is_zero())
      break;
    out.push_back(std::move(next));
  }
  return out;
}

} // namespace

// (D^m a)(N) b = (-1)^m N!/(N-m)! a(N-m) b
ConfElement shifted_product(const StructureTable &table, int i, int m, int j,
                            int l, int N) {
  if (N < m)
    return ConfElement(RingSpec::constant());
  ConfElement inner = right_shifted(table, i, j, l, N - m);
  if (inner.is_zero())
    return inner;
  return inner * (falling(N, m) * Scalar(m % 2 ? -1 : 1));
}

ConfElement nth_product(const StructureTable &table, const ConfElement &a,
                        const ConfElement &b, int n) {
  if (!(a.spec() == b.spec()))
    throw SpecMismatch("operands over different rings: " + a.spec().name() +
                       " vs " + b.spec().name());
  if (n < 0)
    throw InvalidArgument("negative product index");
  ConfElement out(a.spec());
  for (const auto &[ka, ra] : a.terms()) {
    check_index(table, ka.first);
    for (const auto &[kb, rb] : b.terms()) {
      check_index(table, kb.first);
      const int sup = table.support(ka.first, kb.first);
      if (sup < 0)
        continue;
      const int top = sup + ka.second + kb.second;
      if (top < n)
        continue;
      auto dr = divided_derivatives(ra, top - n);
      for (int j = 0; j < static_cast<int>(dr.size()); ++j) {
        ConfElement p = shifted_product(table, ka.first, ka.second, kb.first,
                                        kb.second, n + j);
        if (p.is_zero())
          continue;
        out += p.tensor(dr[static_cast<size_t>(j)] * rb);
      }
    }
  }
  return out;
}

LambdaPoly lambda_bracket(const StructureTable &table, const ConfElement &a,
                          const ConfElement &b) {
  if (!(a.spec() == b.spec()))
    throw SpecMismatch("operands over different rings: " + a.spec().name() +
                       " vs " + b.spec().name());
  LambdaPoly out(a.spec());
  for (const auto &[ka, ra] : a.terms()) {
    check_index(table, ka.first);
    for (const auto &[kb, rb] : b.terms()) {
      check_index(table, kb.first);
      const int sup = table.support(ka.first, kb.first);
      if (sup < 0)
        continue;
      const int top = sup + ka.second + kb.second;
      auto dr = divided_derivatives(ra, top);
      for (int N = 0; N <= top; ++N) {
        ConfElement p =
            shifted_product(table, ka.first, ka.second, kb.first, kb.second, N);
        if (p.is_zero())
          continue;
        // the base-change sum puts a(N) b (x) delta^(j)(r) s into lambda^(N-j)
        for (int j = 0; j <= N && j < static_cast<int>(dr.size()); ++j) {
          const int n = N - j;
          out.add(n, p.tensor(dr[static_cast<size_t>(j)] * rb) * factorial(n).inv());
        }
      }
    }
  }
  return out;
}

ConfElement apply_dhat(const ConfElement &a) {
  ConfElement out(a.spec());
  for (const auto &[k, r] : a.terms()) {
    out.add_term(k.first, k.second + 1, r);
    out.add_term(k.first, k.second, delta(r));
  }
  return out;
}

ConfElement apply_dhat(const ConfElement &a, int times) {
  ConfElement out = a;
  for (int s = 0; s < times; ++s)
    out = apply_dhat(out);
  return out;
}

LambdaPoly apply_dhat(const LambdaPoly &p) {
  LambdaPoly out(p.spec());
  for (const auto &[n, c] : p.coeffs())
    out.add(n, apply_dhat(c));
  return out;
}

std::optional<Parity> element_parity(const GeneratorBasis &basis,
                                     const ConfElement &a) {
  std::optional<Parity> p;
  for (const auto &[k, r] : a.terms()) {
    Parity q = basis.parity(k.first);
    if (p && *p != q)
      return std::nullopt;
    p = q;
  }
  return p;
}

ConfElement embed(const ConfElement &a, const RingSpec &target) {
  ConfElement out(target);
  for (const auto &[k, r] : a.terms())
    out.add_term(k.first, k.second, embed(r, target));
  return out;
}

LambdaPoly embed(const LambdaPoly &p, const RingSpec &target) {
  LambdaPoly out(target);
  for (const auto &[n, c] : p.coeffs())
    out.add(n, embed(c, target));
  return out;
}

} // namespace confalg
