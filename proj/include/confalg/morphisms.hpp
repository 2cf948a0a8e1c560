#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "confalg/n4.hpp"

namespace confalg {

using TablePtr = std::shared_ptr<const StructureTable>;

/// Shared instance of the N=4 table.
TablePtr n4_table();
/// Shared instance of the alternate K2 table.
TablePtr k2_alt_table();

/// D-hat-equivariant, R-linear map of A (x) R given by generator images:
/// phi(D^m g (x) r) = Dhat^m(phi(g)) r.
class ConfMorphism {
public:
  ConfMorphism(TablePtr table, RingSpec spec, std::vector<ConfElement> images);
  static ConfMorphism identity(TablePtr table, RingSpec spec);

  const StructureTable &table() const { return *table_; }
  const TablePtr &table_ptr() const { return table_; }
  const RingSpec &spec() const { return spec_; }
  const std::vector<ConfElement> &images() const { return images_; }
  const ConfElement &image(int g) const { return images_.at(static_cast<size_t>(g)); }

  ConfElement apply(const ConfElement &x) const;
  LambdaPoly apply(const LambdaPoly &p) const;

  bool is_identity() const;
  /// All images in V (x) R, i.e. D-power 0.
  bool is_V_stable() const;

  friend bool operator==(const ConfMorphism &a, const ConfMorphism &b);

private:
  TablePtr table_;
  RingSpec spec_;
  std::vector<ConfElement> images_;
};

/// phi o psi
ConfMorphism compose(const ConfMorphism &phi, const ConfMorphism &psi);
/// Images reinterpreted along a ring inclusion.
ConfMorphism embed(const ConfMorphism &phi, const RingSpec &target);

/// (A, B) in SL2(R) x SL2(R_0).
struct SL2Pair {
  Mat2 A, B;

  SL2Pair(Mat2 a, Mat2 b);
  const RingSpec &spec() const { return A.spec(); }
  /// Reason the pair is invalid, or nullopt.
  std::optional<std::string> violation() const;
  friend SL2Pair operator*(const SL2Pair &p, const SL2Pair &q);
  friend bool operator==(const SL2Pair &, const SL2Pair &) = default;
};

SL2Pair embed(const SL2Pair &p, const RingSpec &target);

/// theta_{A,B}: L -> L + T(delta(A) A^-1), T(X) -> T(A X A^-1),
/// G(M) -> G(A M B^-1). Throws InvalidArgument on an invalid pair.
ConfMorphism theta(const SL2Pair &p);

/// The theta formulas with -A^dagger, -B^dagger in place of the inverses,
/// no validation. For probing which conditions on the pair matter.
ConfMorphism theta_formula(const Mat2 &A, const Mat2 &B);

/// The same formulas for arbitrary invertible A, B over the constants.
/// Used to build automorphisms that only factor after a field extension.
ConfMorphism conjugation(const Mat2 &A, const Mat2 &B);

struct AutomorphismReport {
  enum class Status { Automorphism, NotAutomorphism, Inconclusive };
  Status status = Status::Automorphism;
  std::string detail;
  /// Generator pair whose bracket is not preserved.
  std::optional<std::pair<int, int>> witness;
  /// Inverse found by the adjugate (V-stable case).
  std::optional<ConfMorphism> inverse;

  bool is_automorphism() const { return status == Status::Automorphism; }
};

/// Checks parity, bracket preservation on all ordered generator pairs and
/// invertibility. V-stable maps are inverted by adjugate; other maps need a
/// witness, otherwise the result is Inconclusive.
AutomorphismReport is_conf_automorphism(
    const ConfMorphism &phi, const std::optional<ConfMorphism> &inverse_witness = {});

/// Square matrix inverse over a ring via Faddeev-LeVerrier; nullopt when
/// the determinant is not a recognized unit.
using RingMatrix = std::vector<std::vector<RingElement>>;
RingElement ring_det(const RingMatrix &m);
std::optional<RingMatrix> ring_inverse(const RingMatrix &m);

struct KernelResult {
  bool in_kernel = false;
  std::optional<RingElement> a;  // A = B = aI
  std::optional<int> witness;    // generator moved by theta
};

KernelResult kernel_witness(const SL2Pair &p);

struct FactorizeResult {
  enum class Kind { Pair, ExtensionRequired, NotAnAutomorphism };
  Kind kind = Kind::NotAnAutomorphism;
  std::optional<SL2Pair> pair;
  std::string detail;
};

/// Recovers (A, B) with theta(A, B) = phi for a V-stable automorphism of
/// F over the constants. The sign is fixed so that the first nonzero entry
/// of A is the lexicographically smaller of +-entry. Throws InvalidArgument
/// off the constant ring or off the N=4 table.
FactorizeResult factorize(const ConfMorphism &phi);

/// 1 -> 1 - D xidxi, xi -> dxi, dxi -> xi, xidxi -> -xidxi on k2-alt.
ConfMorphism k2_phi();

} // namespace confalg
