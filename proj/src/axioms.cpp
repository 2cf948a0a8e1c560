#include "confalg/axioms.hpp"

#include "confalg/text.hpp"

namespace confalg {

bool AxiomReport::passed() const { return first_failure() == nullptr; }

const AxiomResult *AxiomReport::first_failure() const {
  for (const auto &r : results)
    if (!r.passed)
      return &r;
  return nullptr;
}

namespace {

const RingSpec kConst = RingSpec::constant();

ConfElement gen(int g, int m = 0) { return ConfElement::term(kConst, g, m, Scalar(1)); }

std::string dname(const GeneratorBasis &basis, int g, int m) {
  if (m == 0)
    return basis.name(g);
  return (m == 1 ? std::string("D ") : "D^" + std::to_string(m) + " ") + basis.name(g);
}

void record(AxiomResult &r, bool ok, const std::string &what) {
  ++r.checks;
  if (!ok && r.passed) {
    r.passed = false;
    r.counterexample = what;
  }
}

AxiomResult check_cs0(const StructureTable &t, const AxiomBounds &b) {
  AxiomResult r{"CS0", true, 0, ""};
  for (int i = 0; i < t.size(); ++i)
    for (int j = 0; j < t.size(); ++j) {
      if (!t.is_defined(i, j)) {
        record(r, false, t.basis().name(i) + "(n)" + t.basis().name(j) +
                             " is undefined");
        continue;
      }
      const int s = t.support(i, j);
      record(r, s <= b.n_max,
             t.basis().name(i) + "(" + std::to_string(s) + ")" +
                 t.basis().name(j) + " is nonzero beyond n_max");
    }
  return r;
}

AxiomResult check_cs1(const StructureTable &t, const AxiomBounds &b) {
  AxiomResult r{"CS1", true, 0, ""};
  const auto &basis = t.basis();
  for (int i = 0; i < t.size(); ++i)
    for (int j = 0; j < t.size(); ++j)
      for (int m = 0; m < b.dpow_max; ++m)
        for (int l = 0; l < b.dpow_max; ++l)
          for (int n = 0; n <= b.n_max; ++n) {
            const ConfElement a = gen(i, m), c = gen(j, l);
            ConfElement prev = n > 0 ? nth_product(t, a, c, n - 1) : ConfElement(kConst);
            // left rule
            ConfElement lhs = nth_product(t, a.shifted(1), c, n);
            ConfElement rhs = prev * Scalar(-n);
            if (r.passed && !(lhs == rhs))
              record(r, false,
                     "(" + dname(basis, i, m + 1) + ")(" + std::to_string(n) + ")(" +
                         dname(basis, j, l) + "): " + render(basis, lhs) +
                         " != " + render(basis, rhs));
            else
              record(r, true, "");
            // right rule
            lhs = nth_product(t, a, c.shifted(1), n);
            rhs = nth_product(t, a, c, n).shifted(1) + prev * Scalar(n);
            if (r.passed && !(lhs == rhs))
              record(r, false,
                     "(" + dname(basis, i, m) + ")(" + std::to_string(n) + ")(" +
                         dname(basis, j, l + 1) + "): " + render(basis, lhs) +
                         " != " + render(basis, rhs));
            else
              record(r, true, "");
          }
  return r;
}

AxiomResult check_cs2(const StructureTable &t, const AxiomBounds &b) {
  AxiomResult r{"CS2", true, 0, ""};
  const auto &basis = t.basis();
  const int jmax = b.n_max + t.max_support() + 1;
  for (int i = 0; i < t.size(); ++i)
    for (int j = 0; j < t.size(); ++j) {
      const int sign = parity_sign(basis.parity(i), basis.parity(j));
      for (int n = 0; n <= b.n_max; ++n) {
        ConfElement lhs = nth_product(t, gen(i), gen(j), n);
        ConfElement rhs(kConst);
        for (int k = 0; k <= jmax; ++k) {
          ConfElement ba = nth_product(t, gen(j), gen(i), n + k);
          if (ba.is_zero())
            continue;
          Scalar c = factorial(k).inv() * Scalar(-sign * (((k + n) % 2) ? -1 : 1));
          rhs += ba.shifted(k) * c;
        }
        bool ok = lhs == rhs;
        record(r, ok,
               ok ? ""
                  : basis.name(i) + "(" + std::to_string(n) + ")" + basis.name(j) +
                        ": " + render(basis, lhs) + " != " + render(basis, rhs));
      }
    }
  return r;
}

AxiomResult check_cs3(const StructureTable &t, const AxiomBounds &b) {
  AxiomResult r{"CS3", true, 0, ""};
  const auto &basis = t.basis();
  const int size = t.size();
  // cache generator products x(k) y
  std::vector<std::vector<std::vector<ConfElement>>> prod(
      static_cast<size_t>(size),
      std::vector<std::vector<ConfElement>>(static_cast<size_t>(size)));
  for (int x = 0; x < size; ++x)
    for (int y = 0; y < size; ++y)
      for (int k = 0; k <= b.m_max; ++k)
        prod[x][y].push_back(nth_product(t, gen(x), gen(y), k));

  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) {
      const int sign = parity_sign(basis.parity(i), basis.parity(j));
      for (int k = 0; k < size; ++k)
        for (int m = 0; m <= b.m_max; ++m)
          for (int n = 0; n <= b.m_max; ++n) {
            ConfElement lhs = nth_product(t, gen(i), prod[j][k][n], m);
            ConfElement rhs = nth_product(t, gen(j), prod[i][k][m], n) * Scalar(sign);
            for (int s = 0; s <= m; ++s) {
              const ConfElement &ab = prod[i][j][s];
              if (ab.is_zero())
                continue;
              rhs += nth_product(t, ab, gen(k), m + n - s) * binomial(m, s);
            }
            bool ok = lhs == rhs;
            record(r, ok,
                   ok ? ""
                      : "a=" + basis.name(i) + " b=" + basis.name(j) +
                            " c=" + basis.name(k) + " m=" + std::to_string(m) +
                            " n=" + std::to_string(n) + ": " + render(basis, lhs) +
                            " != " + render(basis, rhs));
          }
    }
  return r;
}

} // namespace

AxiomReport check_axioms(const StructureTable &table, AxiomBounds bounds) {
  AxiomReport rep;
  rep.results.push_back(check_cs0(table, bounds));
  if (!rep.results.back().passed)
    return rep;
  rep.results.push_back(check_cs1(table, bounds));
  rep.results.push_back(check_cs2(table, bounds));
  rep.results.push_back(check_cs3(table, bounds));
  return rep;
}

} // namespace confalg
