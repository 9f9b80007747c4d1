#include "lognf/factory.hpp"

#include "lognf/nf_basic.hpp"
#include "lognf/nf_bs.hpp"
#include "lognf/nf_ext.hpp"
#include "lognf/nf_freeprod.hpp"
#include "lognf/nf_ut.hpp"
#include "lognf/wp.hpp"

namespace lognf {

namespace {

void collect_freelike(const GroupExpr& e, std::vector<int>& basis, bool& ok) {
  if (!ok) return;
  switch (e.node) {
    case Node::Z:
      basis.push_back(static_cast<int>(basis.size()));
      return;
    case Node::Free:
      for (long long i = 0; i < e.a; ++i) basis.push_back(static_cast<int>(basis.size()));
      return;
    case Node::FreeProd:
      collect_freelike(*e.left, basis, ok);
      collect_freelike(*e.right, basis, ok);
      return;
    default:
      ok = false;
  }
}

bool is_cyclic(const GroupExpr& e, long long& m) {
  if (e.node != Node::Cyclic) return false;
  m = e.a;
  return true;
}

// The registered product word-problem scans for G * H.
ScanFactory freeprod_scans(const GroupExpr& e, int left_rank) {
  if (auto basis = freelike_basis(e)) {
    return modular_scan_factory(sanov_rep_for(*basis), left_rank);
  }
  long long m = 0, n = 0;
  if (is_cyclic(*e.left, m) && is_cyclic(*e.right, n)) {
    if ((m == 2 && n == 3) || (m == 3 && n == 2)) {
      // PSL2(Z): the order-2 generator maps to S, the order-3 one to z.
      IMat2 S{0, -1, 1, 0}, z{0, -1, 1, -1};
      std::vector<IMat2> gens = m == 2 ? std::vector<IMat2>{S, z} : std::vector<IMat2>{z, S};
      auto rep = std::make_shared<ModularRep>(std::move(gens), std::vector<long long>{1, 1},
                                              ModularRep::Mode::PlusMinusIdentity);
      return modular_scan_factory(std::move(rep), left_rank);
    }
    return syllable_scan_factory(m, n, left_rank);
  }
  fail(Err::MissingOracle,
       "no word-problem oracle registered for this free product (" + e.text + ")");
}

TransducerPtr build_nf(const GroupExpr& e, const BuildOptions& opts) {
  Alphabet a = alphabet_of(e);
  TransducerPtr t;
  switch (e.node) {
    case Node::Z:
      t = make_z_nf(a);
      break;
    case Node::Cyclic:
      t = make_cyclic_nf(a, e.a);
      break;
    case Node::Free:
      t = make_free_nf(a, static_cast<int>(e.a));
      break;
    case Node::BS:
      t = make_bs_nf(a, e.a);
      break;
    case Node::UT:
      t = make_ut_nf(a, static_cast<int>(e.a));
      break;
    case Node::Direct:
      t = make_direct_nf(build_nf(*e.left, opts), build_nf(*e.right, opts));
      break;
    case Node::Wreath:
      t = make_wreath_nf(build_nf(*e.left, opts), build_nf(*e.right, opts), *e.right, opts.wreath);
      break;
    case Node::FreeProd: {
      int left_rank = alphabet_of(*e.left).rank();
      t = make_freeprod_nf(build_nf(*e.left, opts), build_nf(*e.right, opts),
                           freeprod_scans(e, left_rank));
      break;
    }
    case Node::Torus: {
      if (e.a == 1 || e.b == 1) {
        t = make_torus_nf(a, e.a, e.b);
        break;
      }
      GroupExpr cm, cn, fp;
      cm.node = Node::Cyclic;
      cm.a = e.a;
      cn.node = Node::Cyclic;
      cn.a = e.b;
      fp.node = Node::FreeProd;
      fp.left = std::make_shared<GroupExpr>(cm);
      fp.right = std::make_shared<GroupExpr>(cn);
      fp.text = "FreeProd(Cyclic(" + std::to_string(e.a) + "),Cyclic(" + std::to_string(e.b) + "))";
      TransducerPtr quotient = build_nf(fp, opts);
      t = make_torus_nf_with_quotient(a, e.a, e.b, std::move(quotient));
      break;
    }
    case Node::FiniteIndex:
      t = make_finite_index_nf(build_nf(*e.left, opts), e.table, e.direction);
      break;
  }
  // Identity normalization: words representing the identity map to the empty
  // word.  A no-op for machines already sending lambda to lambda.
  return normalize_identity(std::move(t));
}

}  // namespace

std::optional<std::vector<int>> freelike_basis(const GroupExpr& e) {
  std::vector<int> basis;
  bool ok = true;
  collect_freelike(e, basis, ok);
  if (!ok) return std::nullopt;
  return basis;
}

bool product_wp_available(const GroupExpr& left, const GroupExpr& right) {
  GroupExpr fp;
  fp.node = Node::FreeProd;
  fp.left = std::make_shared<GroupExpr>(left);
  fp.right = std::make_shared<GroupExpr>(right);
  if (freelike_basis(fp)) return true;
  long long m = 0, n = 0;
  return is_cyclic(left, m) && is_cyclic(right, n);
}

Built build(const GroupExpr& e, const BuildOptions& opts) {
  return Built{e, alphabet_of(e), build_nf(e, opts), Oracle(e)};
}

Built build(const std::string& text, const BuildOptions& opts) {
  return build(parse_group(text), opts);
}

}  // namespace lognf
