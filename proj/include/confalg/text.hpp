#pragma once

#include <functional>
#include <optional>
#include <string>

#include "confalg/conformal.hpp"

namespace confalg {

struct RenderOptions {
  bool ascii = false; // tensor sign as "(x)"
};

/// Terms grouped by (generator, ring monomial) with a polynomial
/// coefficient in D and lam, e.g. `(D + 2*lam) L⊗t + 2 L⊗1`.
std::string render(const GeneratorBasis &basis, const LambdaPoly &p,
                   RenderOptions opts = {});
std::string render(const GeneratorBasis &basis, const ConfElement &a,
                   RenderOptions opts = {});

/// `1`, `t`, `t^2`, `t^-1`, `t^(1/2)`
std::string ring_monomial_string(long num, int den);

/// Hook for function-style terms such as `L(t)`; receives the name and the
/// text between the parentheses, returns nullopt when the name is not a
/// function.
using TermFunction = std::function<std::optional<ConfElement>(
    const std::string &name, const std::string &argument)>;

/// Element literal: signed sum of `[scalar] [D^m] gen [⊗ ring]` terms. A ring
/// factor with more than one term must be parenthesized.
ConfElement parse_element(const GeneratorBasis &basis, const RingSpec &spec,
                          const std::string &text,
                          const TermFunction &functions = nullptr);

/// Line-oriented algebra definition format:
///   algebra <name>
///   generator <name> even|odd
///   prod <g1> <g2> <n> = <term> (+|- <term>)*
/// Pairs mentioned in neither orientation are zero.
StructureTable parse_algebra(const std::string &text);
std::string print_algebra(const StructureTable &table);

} // namespace confalg
