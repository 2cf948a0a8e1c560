#include "confalg/escape.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "confalg/error.hpp"

namespace confalg {

namespace {

// Polynomial of degree <= 2 in the unknowns. Keys: (-1,-1) constant,
// (-1,v) linear, (u,v) with u <= v quadratic.
struct Poly {
  using Key = std::pair<int, int>;
  std::map<Key, Scalar> t;

  static Key key(int u, int v) { return u <= v ? Key{u, v} : Key{v, u}; }

  void add(Key k, const Scalar &c) {
    if (c.is_zero())
      return;
    auto [it, inserted] = t.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero())
        t.erase(it);
    }
  }
  void add(const Poly &p, const Scalar &c) {
    for (const auto &[k, v] : p.t)
      add(k, v * c);
  }
  bool is_zero() const { return t.empty(); }
  int degree() const {
    int d = 0;
    for (const auto &[k, c] : t)
      d = std::max(d, (k.first >= 0) + (k.second >= 0));
    return d;
  }
  bool mentions(int v) const {
    for (const auto &[k, c] : t)
      if (k.first == v || k.second == v)
        return true;
    return false;
  }
  std::set<int> vars() const {
    std::set<int> s;
    for (const auto &[k, c] : t) {
      if (k.first >= 0)
        s.insert(k.first);
      if (k.second >= 0)
        s.insert(k.second);
    }
    return s;
  }
};

// affine * variable
Poly times_var(const Poly &a, int w) {
  Poly out;
  for (const auto &[k, c] : a.t)
    out.add(k.second < 0 ? Poly::Key{-1, w} : Poly::key(k.second, w), c);
  return out;
}

// affine * affine
Poly times_affine(const Poly &a, const Poly &b) {
  Poly out;
  for (const auto &[ka, ca] : a.t)
    for (const auto &[kb, cb] : b.t) {
      const int x = ka.second, y = kb.second; // -1 for the constant
      Poly::Key k = x < 0 ? Poly::Key{-1, y} : (y < 0 ? Poly::Key{-1, x} : Poly::key(x, y));
      out.add(k, ca * cb);
    }
  return out;
}

Poly substitute(const Poly &p, int v, const Poly &expr) {
  if (!p.mentions(v))
    return p;
  Poly out;
  for (const auto &[k, c] : p.t) {
    if (k.first != v && k.second != v) {
      out.add(k, c);
    } else if (k.first < 0) {
      out.add(expr, c);
    } else if (k.first == v && k.second == v) {
      out.add(times_affine(expr, expr), c);
    } else {
      const int other = k.first == v ? k.second : k.first;
      out.add(times_var(expr, other), c);
    }
  }
  return out;
}

Poly constant(const Scalar &c) {
  Poly p;
  p.add({-1, -1}, c);
  return p;
}

struct State {
  std::vector<Poly> eqs;
  std::map<int, Poly> solved; // var -> affine expression in free vars
  size_t stage = 0;
};

enum class Prop { Ok, Contradiction };

struct Var {
  int g;     // generator whose image carries the unknown
  int h;     // target generator
  int m;     // D-power
  long e;    // ring exponent numerator
};

class Solver {
public:
  Solver(TablePtr table, RingSpec spec, EscapeOptions opts)
      : table_(std::move(table)), spec_(spec), opts_(opts) {}

  EscapeResult run();

private:
  void build_variables();
  void build_equations();
  std::vector<int> normalization();

  void eliminate(State &s, int v, const Poly &expr) {
    for (auto &eq : s.eqs)
      eq = substitute(eq, v, expr);
    for (auto &[w, e] : s.solved)
      e = substitute(e, v, expr);
    s.solved[v] = expr;
  }

  Prop propagate(State &s);
  bool image_vanishes(const State &s) const;
  void dfs(State s);
  void leaf(const State &s);
  bool try_witness(const State &s);
  Scalar value_of(const State &s, int v, const std::map<int, Scalar> &free) const;
  ConfMorphism morphism_from(const State &s, const std::map<int, Scalar> &free) const;

  TablePtr table_;
  RingSpec spec_;
  EscapeOptions opts_;

  std::vector<Var> vars_;
  std::vector<std::vector<int>> vars_of_gen_;
  std::vector<int> escape_vars_;
  std::vector<std::vector<Poly>> stages_;
  std::vector<int> sector_;

  EscapeResult res_;
  bool stop_ = false;
  bool inconclusive_ = false;
  std::string inconclusive_reason_;
  std::optional<ConfMorphism> unverified_;
};

void Solver::build_variables() {
  const auto &basis = table_->basis();
  std::vector<long> exps{0};
  if (spec_.kind == RingSpec::Kind::Laurent || spec_.kind == RingSpec::Kind::Puiseux) {
    exps.clear();
    const long w = static_cast<long>(opts_.window) * spec_.denominator();
    for (long e = -w; e <= w; ++e)
      exps.push_back(e);
  } else if (spec_.kind == RingSpec::Kind::Trunc) {
    exps.clear();
    for (long e = 0; e < spec_.param; ++e)
      exps.push_back(e);
  }
  vars_of_gen_.assign(static_cast<size_t>(basis.size()), {});
  for (int g = 0; g < basis.size(); ++g)
    for (int h = 0; h < basis.size(); ++h) {
      if (basis.parity(h) != basis.parity(g))
        continue;
      for (int m = 0; m <= opts_.dmax; ++m)
        for (long e : exps) {
          const int id = static_cast<int>(vars_.size());
          vars_.push_back({g, h, m, e});
          vars_of_gen_[static_cast<size_t>(g)].push_back(id);
          if (m > 0)
            escape_vars_.push_back(id);
        }
    }
}

// Equations phi([a_lam b]) = [phi(a)_lam phi(b)] coefficientwise, grouped
// in two stages: even-even pairs first, then pairs with an odd generator.
void Solver::build_equations() {
  const StructureTable &t = *table_;
  const auto &basis = t.basis();
  auto element = [&](const Var &v) {
    return ConfElement::term(spec_, v.h, v.m, RingElement::monomial(spec_, Scalar(1), v.e));
  };
  // lambda-brackets of the basis elements carried by the unknowns
  std::map<std::pair<std::tuple<int, int, long>, std::tuple<int, int, long>>, LambdaPoly> cache;
  auto bracket = [&](const Var &a, const Var &b) -> const LambdaPoly & {
    auto key = std::make_pair(std::make_tuple(a.h, a.m, a.e), std::make_tuple(b.h, b.m, b.e));
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, lambda_bracket(t, element(a), element(b))).first;
    return it->second;
  };

  using EqKey = std::tuple<int, int, int, long>; // (lam power, gen, D-power, exponent)
  stages_.assign(2, {});
  for (int i = 0; i < t.size(); ++i)
    for (int j = 0; j < t.size(); ++j) {
      std::map<EqKey, Poly> eqs;
      // right side: bilinear in the unknowns
      for (int u : vars_of_gen_[static_cast<size_t>(i)])
        for (int v : vars_of_gen_[static_cast<size_t>(j)]) {
          const LambdaPoly &br = bracket(vars_[static_cast<size_t>(u)], vars_[static_cast<size_t>(v)]);
          for (const auto &[n, c] : br.coeffs())
            for (const auto &[k, r] : c.terms())
              for (const auto &[e, s] : r.terms())
                eqs[{n, k.first, k.second, e}].add(Poly::key(u, v), s);
        }
      // left side: phi applied to the bracket of the generators, linear
      LambdaPoly gb = lambda_bracket(t, ConfElement::generator(spec_, i),
                                     ConfElement::generator(spec_, j));
      for (const auto &[n, c] : gb.coeffs())
        for (const auto &[k, r] : c.terms())
          for (int u : vars_of_gen_[static_cast<size_t>(k.first)]) {
            ConfElement img = apply_dhat(element(vars_[static_cast<size_t>(u)]), k.second) * r;
            for (const auto &[k2, r2] : img.terms())
              for (const auto &[e, s] : r2.terms())
                eqs[{n, k2.first, k2.second, e}].add(Poly::Key{-1, u}, -s);
          }
      const bool even = basis.parity(i) == Parity::Even && basis.parity(j) == Parity::Even;
      for (auto &[k, p] : eqs)
        if (!p.is_zero())
          stages_[even ? 0 : 1].push_back(std::move(p));
    }
  res_.equations = static_cast<long>(stages_[0].size() + stages_[1].size());
}

// A perfect, nonabelian, 3-dimensional even current sector: the n-th
// products among its generators vanish for n >= 1 and a(0)b stays in its
// span at D-power 0.
std::vector<int> Solver::normalization() {
  const StructureTable &t = *table_;
  const auto &basis = t.basis();
  std::vector<int> even;
  for (int g = 0; g < t.size(); ++g)
    if (basis.parity(g) == Parity::Even)
      even.push_back(g);
  for (size_t a = 0; a < even.size(); ++a)
    for (size_t b = a + 1; b < even.size(); ++b)
      for (size_t c = b + 1; c < even.size(); ++c) {
        std::vector<int> s{even[a], even[b], even[c]};
        bool closed = true;
        std::vector<std::vector<Scalar>> span;
        for (int x : s)
          for (int y : s) {
            if (t.support(x, y) > 0) {
              closed = false;
              continue;
            }
            ConfElement p = t.product(x, y, 0);
            std::vector<Scalar> row(3);
            for (const auto &[k, r] : p.terms()) {
              auto pos = std::find(s.begin(), s.end(), k.first);
              if (pos == s.end() || k.second != 0) {
                closed = false;
                break;
              }
              row[static_cast<size_t>(pos - s.begin())] = r.constant_term();
            }
            span.push_back(row);
          }
        if (!closed)
          continue;
        // rank of the span of all products
        int rank = 0;
        for (int col = 0; col < 3 && rank < static_cast<int>(span.size()); ++col) {
          size_t p = static_cast<size_t>(rank);
          while (p < span.size() && span[p][col].is_zero())
            ++p;
          if (p == span.size())
            continue;
          std::swap(span[p], span[static_cast<size_t>(rank)]);
          for (size_t q = 0; q < span.size(); ++q) {
            if (q == static_cast<size_t>(rank) || span[q][col].is_zero())
              continue;
            Scalar f = span[q][col] / span[static_cast<size_t>(rank)][col];
            for (int k = 0; k < 3; ++k)
              span[q][k] -= f * span[static_cast<size_t>(rank)][k];
          }
          ++rank;
        }
        if (rank == 3)
          return s;
      }
  return {};
}

Prop Solver::propagate(State &s) {
  while (true) {
    bool progress = false;
    std::vector<Poly> kept;
    kept.reserve(s.eqs.size());
    for (auto &eq : s.eqs) {
      if (eq.is_zero())
        continue;
      if (eq.degree() == 0)
        return Prop::Contradiction;
      kept.push_back(std::move(eq));
    }
    s.eqs = std::move(kept);

    for (size_t k = 0; k < s.eqs.size() && !progress; ++k) {
      const Poly &eq = s.eqs[k];
      const int deg = eq.degree();
      if (deg == 1) {
        // c v + rest = 0, eliminate the largest variable
        int v = -1;
        for (const auto &[key, c] : eq.t)
          v = std::max(v, key.second);
        Scalar c = eq.t.at({-1, v});
        Poly expr;
        for (const auto &[key, d] : eq.t)
          if (key.second != v)
            expr.add(key, -d / c);
        eliminate(s, v, expr);
        progress = true;
      } else if (eq.t.size() == 1 && eq.t.begin()->first.first == eq.t.begin()->first.second) {
        eliminate(s, eq.t.begin()->first.first, Poly{});
        progress = true;
      } else {
        auto vs = eq.vars();
        if (vs.size() == 1) {
          // a v^2 + b v + c with a single root
          const int v = *vs.begin();
          auto get = [&](Poly::Key key) {
            auto it = eq.t.find(key);
            return it == eq.t.end() ? Scalar() : it->second;
          };
          Scalar a = get({v, v}), b = get({-1, v}), c = get({-1, -1});
          Scalar disc = b * b - Scalar(4) * a * c;
          if (disc.is_zero()) {
            eliminate(s, v, constant(-b / (Scalar(2) * a)));
            progress = true;
          } else if (c.is_zero()) {
            // v (a v + b) = 0: roots 0 and -b/a, left to branching
          }
        }
      }
    }
    if (!progress)
      return Prop::Ok;
  }
}

bool Solver::image_vanishes(const State &s) const {
  for (const auto &vs : vars_of_gen_) {
    bool zero = true;
    for (int v : vs) {
      auto it = s.solved.find(v);
      if (it == s.solved.end() || !it->second.is_zero()) {
        zero = false;
        break;
      }
    }
    if (zero)
      return true;
  }
  return false;
}

void Solver::dfs(State s) {
  if (stop_)
    return;
  while (true) {
    if (propagate(s) == Prop::Contradiction || image_vanishes(s)) {
      ++res_.leaves;
      return;
    }
    // branch candidates: c u v = 0, or a univariate quadratic with two roots
    std::vector<State> children;
    bool found = false;
    for (const auto &eq : s.eqs) {
      if (eq.t.size() == 1) {
        const auto [u, v] = eq.t.begin()->first;
        for (int w : {u, v}) {
          State c = s;
          eliminate(c, w, Poly{});
          children.push_back(std::move(c));
        }
        found = true;
        break;
      }
    }
    if (!found)
      for (const auto &eq : s.eqs) {
        auto vs = eq.vars();
        if (vs.size() != 1)
          continue;
        const int v = *vs.begin();
        auto get = [&](Poly::Key key) {
          auto it = eq.t.find(key);
          return it == eq.t.end() ? Scalar() : it->second;
        };
        Scalar a = get({v, v}), b = get({-1, v}), c = get({-1, -1});
        auto root = sqrt_if_exists(b * b - Scalar(4) * a * c);
        if (!root) {
          continue;
        }
        for (const Scalar &r : {*root, -*root}) {
          State ch = s;
          eliminate(ch, v, constant((-b + r) / (Scalar(2) * a)));
          children.push_back(std::move(ch));
        }
        found = true;
        break;
      }
    if (found) {
      ++res_.branches;
      for (auto &c : children)
        dfs(std::move(c));
      return;
    }
    if (s.stage < stages_.size()) {
      for (const auto &eq : stages_[s.stage]) {
        Poly p = eq;
        for (const auto &[v, e] : s.solved)
          p = substitute(p, v, e);
        s.eqs.push_back(std::move(p));
      }
      ++s.stage;
      continue;
    }
    leaf(s);
    return;
  }
}

Scalar Solver::value_of(const State &s, int v, const std::map<int, Scalar> &free) const {
  auto lookup = [&](int w) {
    auto it = free.find(w);
    return it == free.end() ? Scalar() : it->second;
  };
  auto it = s.solved.find(v);
  if (it == s.solved.end())
    return lookup(v);
  Scalar out;
  for (const auto &[k, c] : it->second.t)
    out += k.second < 0 ? c : c * lookup(k.second);
  return out;
}

ConfMorphism Solver::morphism_from(const State &s, const std::map<int, Scalar> &free) const {
  std::vector<ConfElement> images(static_cast<size_t>(table_->size()), ConfElement(spec_));
  for (size_t v = 0; v < vars_.size(); ++v) {
    Scalar c = value_of(s, static_cast<int>(v), free);
    if (c.is_zero())
      continue;
    const Var &x = vars_[v];
    images[static_cast<size_t>(x.g)] +=
        ConfElement::term(spec_, x.h, x.m, RingElement::monomial(spec_, c, x.e));
  }
  return ConfMorphism(table_, spec_, std::move(images));
}

bool Solver::try_witness(const State &s) {
  std::vector<int> free_vars;
  for (size_t v = 0; v < vars_.size(); ++v)
    if (!s.solved.count(static_cast<int>(v)))
      free_vars.push_back(static_cast<int>(v));
  std::mt19937 rng(12345);
  const Scalar pool[] = {Scalar(0), Scalar(1), Scalar(-1), Scalar(2)};
  for (int attempt = 0; attempt < 40; ++attempt) {
    std::map<int, Scalar> free;
    for (int v : free_vars)
      free[v] = attempt == 0 ? Scalar(1) : pool[rng() % 4];
    bool ok = true;
    for (const auto &eq : s.eqs) {
      Scalar val;
      for (const auto &[k, c] : eq.t) {
        Scalar term = c;
        if (k.first >= 0)
          term *= free[k.first];
        if (k.second >= 0)
          term *= free[k.second];
        val += term;
      }
      if (!val.is_zero()) {
        ok = false;
        break;
      }
    }
    if (!ok)
      continue;
    ConfMorphism phi = morphism_from(s, free);
    if (phi.is_V_stable())
      continue;
    AutomorphismReport rep = is_conf_automorphism(phi, phi);
    if (rep.witness)
      continue; // bracket not preserved
    if (rep.is_automorphism()) {
      res_.witness = phi;
      res_.witness_inverse_verified = true;
      return true;
    }
    if (!unverified_)
      unverified_ = phi;
  }
  return false;
}

void Solver::leaf(const State &s) {
  ++res_.leaves;
  if (res_.leaves > opts_.max_leaves) {
    stop_ = true;
    inconclusive_ = true;
    inconclusive_reason_ = "leaf limit reached";
    return;
  }
  bool escapes = false;
  for (int v : escape_vars_) {
    auto it = s.solved.find(v);
    if (it == s.solved.end() || !it->second.is_zero()) {
      escapes = true;
      break;
    }
  }
  if (!escapes)
    return;
  if (try_witness(s)) {
    stop_ = true;
    return;
  }
  inconclusive_ = true;
  if (inconclusive_reason_.empty())
    inconclusive_reason_ = s.eqs.empty()
                               ? "a solved branch leaves D-power coefficients free, but no "
                                 "sampled completion is an automorphism"
                               : "a branch stalls on nonlinear equations with D-power "
                                 "coefficients still free";
}

EscapeResult Solver::run() {
  if (!spec_.is_integral_domain())
    throw InvalidArgument("escape search needs an integral domain");
  if (opts_.dmax < 1)
    throw InvalidArgument("dmax must be at least 1");
  build_variables();
  build_equations();
  res_.variables = static_cast<int>(vars_.size());
  res_.escape_variables = static_cast<int>(escape_vars_.size());

  State s;
  if (opts_.normalize) {
    sector_ = normalization();
    for (int g : sector_)
      for (int v : vars_of_gen_[static_cast<size_t>(g)]) {
        const Var &x = vars_[static_cast<size_t>(v)];
        if (x.m != 0 || std::find(sector_.begin(), sector_.end(), x.h) == sector_.end())
          continue;
        eliminate(s, v, constant(x.h == g && x.e == 0 ? Scalar(1) : Scalar(0)));
      }
    for (size_t k = 0; k < sector_.size(); ++k)
      res_.normalized_sector += (k ? " " : "") + table_->basis().name(sector_[k]);
  }
  dfs(std::move(s));

  using Outcome = EscapeResult::Outcome;
  if (res_.witness) {
    res_.outcome = Outcome::Witness;
    res_.detail = "bracket-preserving map with D-power terms, inverse verified";
  } else if (unverified_ && !inconclusive_) {
    res_.outcome = Outcome::Witness;
    res_.witness = unverified_;
    res_.detail = "bracket-preserving map with D-power terms, inverse not verified";
  } else if (inconclusive_) {
    res_.outcome = Outcome::Inconclusive;
    res_.detail = inconclusive_reason_;
  } else {
    res_.outcome = Outcome::None;
    res_.detail = "every branch forces the D-power coefficients to zero";
  }
  return res_;
}

} // namespace

EscapeResult bounded_escape_search(TablePtr table, const RingSpec &spec,
                                   EscapeOptions opts) {
  return Solver(std::move(table), spec, opts).run();
}

} // namespace confalg
