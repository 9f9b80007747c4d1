#pragma once
// Assembly of a normal-form transducer and its exact oracle from a group
// expression.

#include <optional>
#include <string>

#include "lognf/element.hpp"
#include "lognf/expr.hpp"
#include "lognf/machine.hpp"
#include "lognf/nf_wreath.hpp"

namespace lognf {

struct BuildOptions {
  WreathStrategy wreath = WreathStrategy::Auto;
};

struct Built {
  GroupExpr expr;
  Alphabet alphabet;
  TransducerPtr nf;
  Oracle oracle;
};

Built build(const GroupExpr& e, const BuildOptions& opts = {});
Built build(const std::string& text, const BuildOptions& opts = {});

// Merged Sanov basis indices when the expression is free-like (Z, Free, or a
// free product of free-like factors); nullopt otherwise.
std::optional<std::vector<int>> freelike_basis(const GroupExpr& e);

// Whether a metered word-problem oracle for the free product is registered.
bool product_wp_available(const GroupExpr& left, const GroupExpr& right);

}  // namespace lognf
