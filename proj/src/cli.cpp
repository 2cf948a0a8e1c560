#include "confalg/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <memory>
#include <sstream>

#include "confalg/axioms.hpp"
#include "confalg/builders.hpp"
#include "confalg/error.hpp"
#include "confalg/escape.hpp"
#include "confalg/sampling.hpp"
#include "confalg/text.hpp"

namespace confalg::cli {

namespace {

struct UsageError : Error {
  using Error::Error;
};

// builtin name, or a path to an algebra file
TablePtr load_algebra(const std::string &arg) {
  if (arg == "n4")
    return n4_table();
  if (arg == "k2-alt")
    return k2_alt_table();
  if (auto t = builtin_algebra(arg))
    return std::make_shared<const StructureTable>(std::move(*t));
  std::ifstream in(arg);
  if (!in) {
    std::string names;
    for (const auto &n : builtin_names())
      names += (names.empty() ? "" : ", ") + n;
    throw UsageError("unknown algebra '" + arg + "' (builtins: " + names + ")");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return std::make_shared<const StructureTable>(parse_algebra(buf.str()));
}

bool is_n4(const StructureTable &t) {
  if (t.size() != 8)
    return false;
  const char *names[] = {"L", "T1", "T2", "T3", "G1", "G2", "Gb1", "Gb2"};
  for (int g = 0; g < 8; ++g)
    if (t.basis().name(g) != names[g])
      return false;
  return true;
}

ConfElement parse_arg(const StructureTable &t, const RingSpec &spec, const std::string &text) {
  TermFunction fns;
  if (is_n4(t))
    fns = [&spec](const std::string &name,
                  const std::string &arg) -> std::optional<ConfElement> {
      if (name == "L")
        return L_of(parse_ring_element(arg, spec));
      if (name == "T")
        return T_of(parse_matrix(arg, spec));
      if (name == "G")
        return G_of(parse_matrix(arg, spec));
      return std::nullopt;
    };
  return parse_element(t.basis(), spec, text, fns);
}

void print_images(std::ostream &out, const ConfMorphism &phi, RenderOptions ro,
                  const std::string &indent = "") {
  const auto &basis = phi.table().basis();
  for (int g = 0; g < basis.size(); ++g)
    out << indent << basis.name(g) << " -> " << render(basis, phi.image(g), ro) << "\n";
}

const char *yes_no(bool b) { return b ? "yes" : "no"; }

struct Options {
  std::string ring = "const";
  std::uint64_t seed = 1;
  int max_n = 6;
  int dmax = 1;
  int count = 100;
  bool ascii = false;
  std::vector<std::string> pos;
};

int cmd_check(const Options &o, std::ostream &out) {
  TablePtr t = load_algebra(o.pos.at(0));
  AxiomBounds b;
  b.n_max = o.max_n;
  AxiomReport rep = check_axioms(*t, b);
  out << t->name() << ": " << t->size() << " generators, n <= " << b.n_max
      << ", m <= " << b.m_max << ", D-power <= " << b.dpow_max << "\n";
  for (const auto &r : rep.results) {
    out << r.axiom << " " << (r.passed ? "pass" : "FAIL") << " (" << r.checks << " checks)";
    if (!r.passed)
      out << ": " << r.counterexample;
    out << "\n";
  }
  out << (rep.passed() ? "all axioms pass" : "axiom check failed") << "\n";
  return rep.passed() ? 0 : 1;
}

int cmd_bracket(const Options &o, std::ostream &out) {
  TablePtr t = load_algebra(o.pos.at(0));
  const RingSpec spec = RingSpec::parse(o.ring);
  ConfElement a = parse_arg(*t, spec, o.pos.at(1));
  ConfElement b = parse_arg(*t, spec, o.pos.at(2));
  out << render(t->basis(), lambda_bracket(*t, a, b), {o.ascii}) << "\n";
  return 0;
}

SL2Pair pair_arg(const Options &o, size_t first) {
  const RingSpec spec = RingSpec::parse(o.ring);
  SL2Pair p(parse_matrix(o.pos.at(first), spec), parse_matrix(o.pos.at(first + 1), spec));
  if (auto v = p.violation())
    throw UsageError("not an SL2 pair: " + *v);
  return p;
}

int cmd_theta(const Options &o, std::ostream &out) {
  print_images(out, theta(pair_arg(o, 0)), {o.ascii});
  return 0;
}

int cmd_verify_theta(const Options &o, std::ostream &out) {
  const RingSpec spec = RingSpec::parse(o.ring);
  Rng rng(o.seed);
  int autos = 0, homs = 0;
  for (int k = 0; k < o.count; ++k) {
    SL2Pair p = random_sl2_pair(spec, rng);
    SL2Pair q = random_sl2_pair(spec, rng);
    ConfMorphism tp = theta(p);
    if (is_conf_automorphism(tp).is_automorphism())
      ++autos;
    if (theta(p * q) == compose(tp, theta(q)))
      ++homs;
  }
  out << "ring " << o.ring << ", seed " << o.seed << ", " << o.count << " pairs\n";
  out << "automorphism: " << autos << "/" << o.count << "\n";
  out << "homomorphism law: " << homs << "/" << o.count << "\n";
  const bool ok = autos == o.count && homs == o.count;
  out << (ok ? "pass" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

int cmd_factorize(const Options &o, std::ostream &out) {
  const RingSpec spec = RingSpec::parse(o.ring);
  if (!(spec == RingSpec::constant()))
    throw UsageError("factorize works over const only");
  auto A = parse_matrix(o.pos.at(0), spec);
  auto B = parse_matrix(o.pos.at(1), spec);
  FactorizeResult r = factorize(conjugation(A, B));
  switch (r.kind) {
  case FactorizeResult::Kind::Pair:
    out << "A = " << r.pair->A.to_string() << "\n";
    out << "B = " << r.pair->B.to_string() << "\n";
    return 0;
  case FactorizeResult::Kind::ExtensionRequired:
    out << "extension required: " << r.detail << "\n";
    return 0;
  case FactorizeResult::Kind::NotAnAutomorphism:
    break;
  }
  out << "not an automorphism: " << r.detail << "\n";
  return 1;
}

int cmd_kernel(const Options &o, std::ostream &out) {
  SL2Pair p = pair_arg(o, 0);
  KernelResult r = kernel_witness(p);
  if (r.in_kernel)
    out << "in kernel: A = B = (" << r.a->to_string() << ") I\n";
  else
    out << "not in kernel: theta moves " << n4_table()->basis().name(*r.witness) << "\n";
  return 0;
}

int cmd_escape(const Options &o, std::ostream &out) {
  TablePtr t = load_algebra(o.pos.at(0));
  const RingSpec spec = RingSpec::parse(o.ring);
  EscapeOptions eo;
  eo.dmax = o.dmax;
  EscapeResult r = bounded_escape_search(t, spec, eo);
  out << t->name() << " over " << o.ring << ", dmax " << o.dmax << "\n";
  if (!r.normalized_sector.empty())
    out << "normalized sector: " << r.normalized_sector << "\n";
  out << "variables " << r.variables << " (" << r.escape_variables << " with D-power >= 1), equations "
      << r.equations << ", branches " << r.branches << ", leaves " << r.leaves << "\n";
  switch (r.outcome) {
  case EscapeResult::Outcome::None:
    out << "result: none (" << r.detail << ")\n";
    break;
  case EscapeResult::Outcome::Inconclusive:
    out << "result: inconclusive (" << r.detail << ")\n";
    break;
  case EscapeResult::Outcome::Witness:
    out << "result: witness (" << r.detail << ")\n";
    print_images(out, *r.witness, {o.ascii}, "  ");
    break;
  }
  return 0;
}

int cmd_demo(const Options &o, std::ostream &out) {
  if (o.pos.at(0) != "k2-phi")
    throw UsageError("unknown demo '" + o.pos.at(0) + "' (available: k2-phi)");
  ConfMorphism phi = k2_phi();
  out << "phi on " << phi.table().name() << ":\n";
  print_images(out, phi, {o.ascii}, "  ");
  const bool aut = is_conf_automorphism(phi, phi).is_automorphism();
  const bool invol = compose(phi, phi).is_identity();
  const bool vstable = phi.is_V_stable();
  out << "automorphism with itself as inverse: " << yes_no(aut) << "\n";
  out << "phi o phi = id: " << yes_no(invol) << "\n";
  out << "V-stable: " << yes_no(vstable) << "\n";
  return aut && invol && !vstable ? 0 : 1;
}

int cmd_print(const Options &o, std::ostream &out) {
  out << print_algebra(*load_algebra(o.pos.at(0)));
  return 0;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"exact computations in Lie conformal superalgebras", "confalg"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--ascii", o.ascii, "write (x) for the tensor sign");

  auto ring = [&](CLI::App *sub) { sub->add_option("--ring", o.ring, "const, laurent, puiseux:D, trunc:N"); };
  // one string option per argument: a vector option would split `[[a,b],[c,d]]`
  o.pos.resize(3);
  auto positional = [&](CLI::App *sub, const std::string &names, int n) {
    std::istringstream in(names);
    std::string name;
    for (int k = 0; k < n && in >> name; ++k)
      sub->add_option(name, o.pos[static_cast<size_t>(k)])->required();
  };

  auto *check = app.add_subcommand("check", "check CS0-CS3 over the constants");
  positional(check, "algebra", 1);
  check->add_option("--max-n", o.max_n, "largest n checked");

  auto *bracket = app.add_subcommand("bracket", "lambda-bracket of two elements");
  positional(bracket, "algebra a b", 3);
  ring(bracket);

  auto *th = app.add_subcommand("theta", "generator images of theta(A, B)");
  positional(th, "A B", 2);
  ring(th);

  auto *vt = app.add_subcommand("verify-theta", "random pairs: automorphism and homomorphism law");
  ring(vt);
  vt->add_option("--seed", o.seed);
  vt->add_option("--count", o.count);

  auto *fac = app.add_subcommand("factorize", "recover (A, B) from the conjugation by A, B");
  positional(fac, "A B", 2);
  ring(fac);

  auto *ker = app.add_subcommand("kernel", "is theta(A, B) the identity");
  positional(ker, "A B", 2);
  ring(ker);

  auto *esc = app.add_subcommand("escape-search", "bounded search for non-V-stable automorphisms");
  positional(esc, "algebra", 1);
  ring(esc);
  esc->add_option("--dmax", o.dmax);

  auto *demo = app.add_subcommand("demo", "worked examples");
  positional(demo, "name", 1);
  demo->add_flag("--ascii", o.ascii);

  auto *print = app.add_subcommand("print", "print an algebra in the file format");
  positional(print, "algebra", 1);

  for (auto *sub : app.get_subcommands({}))
    if (sub != demo)
      sub->add_flag("--ascii", o.ascii);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed())
      return cmd_check(o, out);
    if (bracket->parsed())
      return cmd_bracket(o, out);
    if (th->parsed())
      return cmd_theta(o, out);
    if (vt->parsed())
      return cmd_verify_theta(o, out);
    if (fac->parsed())
      return cmd_factorize(o, out);
    if (ker->parsed())
      return cmd_kernel(o, out);
    if (esc->parsed())
      return cmd_escape(o, out);
    if (demo->parsed())
      return cmd_demo(o, out);
    if (print->parsed())
      return cmd_print(o, out);
  } catch (const ParseError &e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

} // namespace confalg::cli
