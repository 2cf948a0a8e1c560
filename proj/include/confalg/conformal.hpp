#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "confalg/diffring.hpp"

namespace confalg {

enum class Parity { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<int>(a) ^ static_cast<int>(b));
}

/// p(a, b) = (-1)^(p(a) p(b))
inline int parity_sign(Parity a, Parity b) {
  return (a == Parity::Odd && b == Parity::Odd) ? -1 : 1;
}

/// Ordered, named generators of a free k[D]-module together with their
/// Z/2 grading. The order fixes the canonical term order.
class GeneratorBasis {
public:
  GeneratorBasis() = default;
  GeneratorBasis(std::vector<std::string> names, std::vector<Parity> parities);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string &name(int g) const { return names_.at(static_cast<size_t>(g)); }
  Parity parity(int g) const { return parities_.at(static_cast<size_t>(g)); }
  std::optional<int> index_of(const std::string &name) const;

  const std::vector<std::string> &names() const { return names_; }
  const std::vector<Parity> &parities() const { return parities_; }

  friend bool operator==(const GeneratorBasis &, const GeneratorBasis &) = default;

private:
  std::vector<std::string> names_;
  std::vector<Parity> parities_;
};

/// Element of A (x) R: a finite sum of terms D^m(g) (x) r, kept in normal
/// form (no zero coefficients, ordered by generator index then D-power).
class ConfElement {
public:
  using Key = std::pair<int, int>; // (generator, D-power)
  using Terms = std::map<Key, RingElement>;

  ConfElement() = default;
  explicit ConfElement(RingSpec spec) : spec_(spec) {}

  /// D^m(g) (x) r
  static ConfElement term(RingSpec spec, int g, int m, const RingElement &r);
  static ConfElement term(RingSpec spec, int g, int m, const Scalar &c);
  /// g (x) 1
  static ConfElement generator(RingSpec spec, int g);

  const RingSpec &spec() const { return spec_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int max_dpow() const;

  void add_term(int g, int m, const RingElement &r);

  ConfElement operator-() const;
  ConfElement &operator+=(const ConfElement &o);
  ConfElement &operator-=(const ConfElement &o);
  ConfElement &operator*=(const Scalar &c);
  ConfElement &operator*=(const RingElement &r);

  friend ConfElement operator+(ConfElement a, const ConfElement &b) { return a += b; }
  friend ConfElement operator-(ConfElement a, const ConfElement &b) { return a -= b; }
  friend ConfElement operator*(ConfElement a, const Scalar &c) { return a *= c; }
  friend ConfElement operator*(const Scalar &c, ConfElement a) { return a *= c; }
  friend ConfElement operator*(ConfElement a, const RingElement &r) { return a *= r; }

  friend bool operator==(const ConfElement &a, const ConfElement &b) {
    return a.spec_ == b.spec_ && a.terms_ == b.terms_;
  }

  /// D_A^j applied termwise (the module derivation of A, not D-hat).
  ConfElement shifted(int j) const;

  /// Coefficients taken over Const, reinterpreted in `spec` and multiplied
  /// by r. Used to tensor table entries with ring elements.
  ConfElement tensor(const RingElement &r) const;

private:
  RingSpec spec_;
  Terms terms_;
};

/// sum_n lambda^n c_n with ConfElement coefficients.
class LambdaPoly {
public:
  LambdaPoly() = default;
  explicit LambdaPoly(RingSpec spec) : spec_(spec) {}

  const RingSpec &spec() const { return spec_; }
  const std::map<int, ConfElement> &coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }
  ConfElement coeff(int n) const;

  void add(int n, const ConfElement &c);

  LambdaPoly &operator+=(const LambdaPoly &o);
  LambdaPoly &operator-=(const LambdaPoly &o);
  LambdaPoly &operator*=(const Scalar &c);
  friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly &b) { return a += b; }
  friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly &b) { return a -= b; }
  friend LambdaPoly operator*(LambdaPoly a, const Scalar &c) { return a *= c; }

  friend bool operator==(const LambdaPoly &a, const LambdaPoly &b) {
    return a.spec_ == b.spec_ && a.coeffs_ == b.coeffs_;
  }

private:
  RingSpec spec_;
  std::map<int, ConfElement> coeffs_;
};

/// n-th products of generators, a_i(n) a_j = sum c D^m g, over Const.
///
/// Only some ordered pairs need to be stored; the reverse orientation of a
/// stored pair is derived by skew-symmetry when the table is built.
class StructureTable {
public:
  using Products = std::vector<ConfElement>; // indexed by n, trailing zeros trimmed

  class Builder {
  public:
    Builder(std::string name, GeneratorBasis basis);

    /// Sets a_i(n) a_j and marks the pair (i, j) stored.
    Builder &set(int i, int j, int n, const ConfElement &value);
    Builder &set(const std::string &a, const std::string &b, int n,
                 const ConfElement &value);
    /// Marks (i, j) stored; unset products of a stored pair are zero.
    Builder &declare(int i, int j);
    /// Declares every pair with neither orientation stored as zero.
    Builder &close_with_zero();

    int index(const std::string &name) const;
    const GeneratorBasis &basis() const { return basis_; }

    /// Validates parity homogeneity and resolves missing orientations.
    StructureTable build() const;

  private:
    std::string name_;
    GeneratorBasis basis_;
    std::map<std::pair<int, int>, Products> stored_;
  };

  const std::string &name() const { return name_; }
  const GeneratorBasis &basis() const { return basis_; }
  int size() const { return basis_.size(); }

  const std::map<std::pair<int, int>, Products> &stored() const { return stored_; }
  bool is_stored(int i, int j) const { return stored_.count({i, j}) != 0; }
  bool is_defined(int i, int j) const;

  /// Resolved products a_i(n) a_j; throws UndefinedProduct.
  const Products &products(int i, int j) const;
  /// a_i(n) a_j over Const (zero past the support).
  ConfElement product(int i, int j, int n) const;
  /// Largest n with a_i(n) a_j != 0, or -1.
  int support(int i, int j) const;
  int max_support() const { return max_support_; }

  /// a_i(n) a_j computed by skew-symmetry from the resolved (j, i) products.
  Products skew_from_transpose(int i, int j) const;

  /// Same basis and same resolved products.
  friend bool operator==(const StructureTable &a, const StructureTable &b);

private:
  StructureTable() = default;

  std::string name_;
  GeneratorBasis basis_;
  std::map<std::pair<int, int>, Products> stored_;
  std::vector<std::vector<std::optional<Products>>> resolved_;
  int max_support_ = -1;
};

/// Skew-symmetry transform: given the products b(k) a for all k, returns
/// a(n) b = -p(a, b) sum_j (-1)^(j+n) D^(j) (b(n+j) a) for n up to the
/// support.
StructureTable::Products skew_transform(const StructureTable::Products &transposed,
                                        int sign_ab);

/// (D^m a_i)(N)(D^l a_j) in A itself, over Const.
ConfElement shifted_product(const StructureTable &table, int i, int m, int j,
                            int l, int N);

/// a(n) b in A (x) R.
ConfElement nth_product(const StructureTable &table, const ConfElement &a,
                        const ConfElement &b, int n);

/// [a_lambda b] = sum_n lambda^n / n! a(n) b.
LambdaPoly lambda_bracket(const StructureTable &table, const ConfElement &a,
                          const ConfElement &b);

/// D-hat = D (x) 1 + 1 (x) delta.
ConfElement apply_dhat(const ConfElement &a);
ConfElement apply_dhat(const ConfElement &a, int times);
LambdaPoly apply_dhat(const LambdaPoly &p);

/// Parity of a homogeneous element, nullopt for zero or mixed elements.
std::optional<Parity> element_parity(const GeneratorBasis &basis,
                                     const ConfElement &a);

/// Reinterprets every coefficient along a ring inclusion.
ConfElement embed(const ConfElement &a, const RingSpec &target);
LambdaPoly embed(const LambdaPoly &p, const RingSpec &target);

} // namespace confalg
