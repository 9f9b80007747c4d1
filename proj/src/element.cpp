#include "lognf/element.hpp"

#include <algorithm>
#include <map>

namespace lognf {

namespace {

int cmp(const Element& a, const Element& b) {
  if (a.tag != b.tag) return a.tag < b.tag ? -1 : 1;
  if (a.ints != b.ints) return a.ints < b.ints ? -1 : 1;
  if (a.bigs.size() != b.bigs.size()) return a.bigs.size() < b.bigs.size() ? -1 : 1;
  for (size_t i = 0; i < a.bigs.size(); ++i) {
    int c = ::cmp(a.bigs[i], b.bigs[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  if (a.kids.size() != b.kids.size()) return a.kids.size() < b.kids.size() ? -1 : 1;
  for (size_t i = 0; i < a.kids.size(); ++i) {
    int c = cmp(a.kids[i], b.kids[i]);
    if (c) return c;
  }
  return 0;
}

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) fail(Err::Overflow, "integer overflow in oracle");
  return r;
}
long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) fail(Err::Overflow, "integer overflow in oracle");
  return r;
}

long long floor_mod(long long v, long long m) { return ((v % m) + m) % m; }

mpz_class pow_p(long long p, long long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return r;
}

Element z_elem(long long v) { return Element{ElTag::Z, {v}, {}, {}}; }
Element cyc_elem(long long m, long long v) { return Element{ElTag::Cyc, {m, floor_mod(v, m)}, {}, {}}; }

Element bs_elem(long long p, long long i, mpz_class num, long long e) {
  if (num == 0) {
    e = 0;
  } else {
    while (e > 0 && mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(p))) {
      num /= static_cast<unsigned long>(p);
      --e;
    }
  }
  Element el{ElTag::BS, {p, i, e}, {}, {}};
  el.bigs.push_back(std::move(num));
  return el;
}

struct UTIndex {
  int i, j;
};
std::vector<UTIndex> ut_index_table(int r) {
  std::vector<UTIndex> v;
  for (int d = 1; d < r; ++d)
    for (int i = 1; i + d <= r; ++i) v.push_back({i, i + d});
  return v;
}

}  // namespace

bool Element::operator==(const Element& o) const { return cmp(*this, o) == 0; }
bool Element::operator<(const Element& o) const { return cmp(*this, o) < 0; }

std::string Element::str() const {
  std::string s;
  switch (tag) {
    case ElTag::Z:
      return "Z(" + std::to_string(ints[0]) + ")";
    case ElTag::Cyc:
      return "C" + std::to_string(ints[0]) + "(" + std::to_string(ints[1]) + ")";
    case ElTag::Free: {
      s = "F(";
      for (size_t i = 1; i < ints.size(); ++i) s += (i > 1 ? " " : "") + std::to_string(ints[i]);
      return s + ")";
    }
    case ElTag::BS:
      return "BS(i=" + std::to_string(ints[1]) + ",m=" + bigs[0].get_str() + "/" +
             std::to_string(ints[0]) + "^" + std::to_string(ints[2]) + ")";
    case ElTag::UT: {
      s = "UT[";
      for (size_t i = 1; i < ints.size(); ++i) s += (i > 1 ? "," : "") + std::to_string(ints[i]);
      return s + "]";
    }
    case ElTag::Pair:
      return "(" + kids[0].str() + "," + kids[1].str() + ")";
    case ElTag::Wreath: {
      s = "W{cur=" + kids[0].str();
      for (size_t i = 1; i + 1 < kids.size(); i += 2)
        s += "," + kids[i].str() + "->" + kids[i + 1].str();
      return s + "}";
    }
    case ElTag::Syll: {
      s = "S[";
      for (size_t i = 0; i < kids.size(); ++i)
        s += (i ? " " : "") + std::to_string(ints[i]) + ":" + kids[i].str();
      return s + "]";
    }
    case ElTag::Torus:
      return "T(i=" + std::to_string(ints[2]) + ",img=" + kids[0].str() + ")";
  }
  return "?";
}

bool oracle_equal(const Element& a, const Element& b) {
  if (a.tag != b.tag) fail(Err::FamilyMismatch, "comparing elements of different families");
  return a == b;
}

Word free_reduce(const Word& w) {
  Word r;
  for (Letter l : w) {
    if (!r.empty() && r.back() == -l)
      r.pop_back();
    else
      r.push_back(l);
  }
  return r;
}

std::vector<Word> schreier_words(const CosetTable& t, const Alphabet& parent) {
  std::vector<Word> words;
  for (int c = 1; c <= t.index; ++c)
    for (int g = 1; g <= parent.rank(); ++g) {
      Word w = t.reps[static_cast<size_t>(c - 1)];
      w.push_back(g);
      int target = t.step(c, g);
      const Word& q = t.reps[static_cast<size_t>(target - 1)];
      for (auto it = q.rbegin(); it != q.rend(); ++it) w.push_back(-*it);
      Word red = free_reduce(w);
      if (!red.empty()) words.push_back(red);
    }
  return words;
}

Oracle::Oracle(GroupExpr e) : expr_(std::move(e)) {}

namespace {

Element identity_of(const GroupExpr& e);
Element letter_of(const GroupExpr& e, Letter l);
Element mul_of(const GroupExpr& e, const Element& x, const Element& y);

Element torus_letter(const GroupExpr& e, Letter l);
Element torus_mul(const GroupExpr& e, const Element& x, const Element& y);

Element identity_of(const GroupExpr& e) {
  switch (e.node) {
    case Node::Z:
      return z_elem(0);
    case Node::Cyclic:
      return cyc_elem(e.a, 0);
    case Node::Free:
      return Element{ElTag::Free, {e.a}, {}, {}};
    case Node::BS:
      return bs_elem(e.a, 0, 0, 0);
    case Node::UT: {
      int r = static_cast<int>(e.a);
      Element el{ElTag::UT, {e.a}, {}, {}};
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) el.ints.push_back(i == j ? 1 : 0);
      return el;
    }
    case Node::Torus: {
      // The quotient image: trivial syllable form, or a cyclic value when one
      // of the factors is degenerate.
      Element img;
      if (e.a == 1 && e.b >= 2)
        img = cyc_elem(e.b, 0);
      else if (e.b == 1 && e.a >= 2)
        img = cyc_elem(e.a, 0);
      else
        img = Element{ElTag::Syll, {}, {}, {}};
      return Element{ElTag::Torus, {e.a, e.b, 0}, {}, {img}};
    }
    case Node::Direct:
      return Element{ElTag::Pair, {}, {}, {identity_of(*e.left), identity_of(*e.right)}};
    case Node::Wreath:
      return Element{ElTag::Wreath, {}, {}, {identity_of(*e.right)}};
    case Node::FreeProd:
      return Element{ElTag::Syll, {}, {}, {}};
    case Node::FiniteIndex:
      return identity_of(*e.left);
  }
  fail(Err::Internal, "unreachable");
}

Element eval_word_of(const GroupExpr& e, const Word& w) {
  Element acc = identity_of(e);
  for (Letter l : w) acc = mul_of(e, acc, letter_of(e, l));
  return acc;
}

Element letter_of(const GroupExpr& e, Letter l) {
  int a = l < 0 ? -l : l;
  switch (e.node) {
    case Node::Z:
      return z_elem(l > 0 ? 1 : -1);
    case Node::Cyclic:
      return cyc_elem(e.a, l > 0 ? 1 : -1);
    case Node::Free:
      return Element{ElTag::Free, {e.a, l}, {}, {}};
    case Node::BS:
      if (a == 1) return bs_elem(e.a, 0, l > 0 ? 1 : -1, 0);  // a^+-1
      return bs_elem(e.a, l > 0 ? 1 : -1, 0, 0);              // t^+-1
    case Node::UT: {
      int r = static_cast<int>(e.a);
      auto idx = ut_index_table(r);
      const UTIndex& ij = idx[static_cast<size_t>(a - 1)];
      Element el = identity_of(e);
      el.ints[static_cast<size_t>(1 + (ij.i - 1) * r + (ij.j - 1))] = l > 0 ? 1 : -1;
      return el;
    }
    case Node::Torus:
      return torus_letter(e, l);
    case Node::Direct:
    case Node::Wreath:
    case Node::FreeProd: {
      int off = alphabet_of(*e.left).rank();
      bool is_left = a <= off;
      Letter inner = is_left ? l : (l > 0 ? l - off : l + off);
      if (e.node == Node::Direct) {
        Element el = identity_of(e);
        el.kids[is_left ? 0 : 1] = letter_of(is_left ? *e.left : *e.right, inner);
        return el;
      }
      if (e.node == Node::Wreath) {
        Element el = identity_of(e);
        if (!is_left) {
          el.kids[0] = letter_of(*e.right, inner);
        } else {
          Element lamp = letter_of(*e.left, inner);
          if (!(lamp == identity_of(*e.left))) {
            el.kids.push_back(identity_of(*e.right));
            el.kids.push_back(std::move(lamp));
          }
        }
        return el;
      }
      Element f = letter_of(is_left ? *e.left : *e.right, inner);
      if (f == identity_of(is_left ? *e.left : *e.right)) return Element{ElTag::Syll, {}, {}, {}};
      return Element{ElTag::Syll, {is_left ? 0 : 1}, {}, {std::move(f)}};
    }
    case Node::FiniteIndex: {
      const Alphabet parent = alphabet_of(*e.left);
      if (e.direction == FiDirection::Sub) {
        auto words = schreier_words(*e.table, parent);
        Word w = words[static_cast<size_t>(a - 1)];
        if (l < 0) w = formal_inverse(w);
        return eval_word_of(*e.left, w);
      }
      // Super: subgroup letters come first, parent letters after them.
      auto words = schreier_words(*e.table, parent);
      int sub_rank = static_cast<int>(words.size());
      if (a <= sub_rank) {
        Word w = words[static_cast<size_t>(a - 1)];
        if (l < 0) w = formal_inverse(w);
        return eval_word_of(*e.left, w);
      }
      Letter inner = l > 0 ? l - sub_rank : l + sub_rank;
      return letter_of(*e.left, inner);
    }
  }
  fail(Err::Internal, "unreachable");
}

Element mul_of(const GroupExpr& e, const Element& x, const Element& y) {
  switch (e.node) {
    case Node::Z:
      return z_elem(checked_add(x.ints[0], y.ints[0]));
    case Node::Cyclic:
      return cyc_elem(e.a, x.ints[1] + y.ints[1]);
    case Node::Free: {
      Element r{ElTag::Free, {e.a}, {}, {}};
      std::vector<long long> acc(x.ints.begin() + 1, x.ints.end());
      for (size_t i = 1; i < y.ints.size(); ++i) {
        long long l = y.ints[i];
        if (!acc.empty() && acc.back() == -l)
          acc.pop_back();
        else
          acc.push_back(l);
      }
      r.ints.insert(r.ints.end(), acc.begin(), acc.end());
      return r;
    }
    case Node::BS: {
      long long p = e.a;
      long long i1 = x.ints[1], e1 = x.ints[2];
      long long i2 = y.ints[1], e2 = y.ints[2];
      const mpz_class& n1 = x.bigs[0];
      const mpz_class& n2 = y.bigs[0];
      // m = m1 + p^{i1} m2 with m1 = n1/p^{e1}, m2 = n2/p^{e2}
      long long f2 = e2 - i1;
      long long E = std::max({e1, f2, 0LL});
      mpz_class num = n1 * pow_p(p, E - e1) + n2 * pow_p(p, E - f2);
      return bs_elem(p, checked_add(i1, i2), std::move(num), E);
    }
    case Node::UT: {
      int r = static_cast<int>(e.a);
      Element out = identity_of(e);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
          long long s = 0;
          for (int k = 0; k < r; ++k)
            s = checked_add(s, checked_mul(x.ints[static_cast<size_t>(1 + i * r + k)],
                                           y.ints[static_cast<size_t>(1 + k * r + j)]));
          out.ints[static_cast<size_t>(1 + i * r + j)] = s;
        }
      return out;
    }
    case Node::Torus:
      return torus_mul(e, x, y);
    case Node::Direct:
      return Element{ElTag::Pair,
                     {},
                     {},
                     {mul_of(*e.left, x.kids[0], y.kids[0]), mul_of(*e.right, x.kids[1], y.kids[1])}};
    case Node::Wreath: {
      const GroupExpr& lampG = *e.left;
      const GroupExpr& baseG = *e.right;
      const Element lamp_id = identity_of(lampG);
      std::map<Element, Element> support;
      for (size_t i = 1; i + 1 < x.kids.size(); i += 2) support.emplace(x.kids[i], x.kids[i + 1]);
      for (size_t i = 1; i + 1 < y.kids.size(); i += 2) {
        Element key = mul_of(baseG, x.kids[0], y.kids[i]);
        auto it = support.find(key);
        if (it == support.end()) {
          support.emplace(std::move(key), y.kids[i + 1]);
        } else {
          it->second = mul_of(lampG, it->second, y.kids[i + 1]);
          if (it->second == lamp_id) support.erase(it);
        }
      }
      Element out{ElTag::Wreath, {}, {}, {mul_of(baseG, x.kids[0], y.kids[0])}};
      for (auto& [k, v] : support) {
        out.kids.push_back(k);
        out.kids.push_back(v);
      }
      return out;
    }
    case Node::FreeProd: {
      std::vector<long long> sides(x.ints);
      std::vector<Element> kids(x.kids);
      size_t yi = 0;
      // Cancel at the seam, then append the rest of y.
      while (yi < y.kids.size()) {
        if (kids.empty() || sides.back() != y.ints[yi]) break;
        const GroupExpr& fac = sides.back() == 0 ? *e.left : *e.right;
        Element merged = mul_of(fac, kids.back(), y.kids[yi]);
        kids.pop_back();
        sides.pop_back();
        ++yi;
        if (!(merged == identity_of(fac))) {
          kids.push_back(std::move(merged));
          sides.push_back(y.ints[yi - 1]);
          break;
        }
      }
      for (; yi < y.kids.size(); ++yi) {
        kids.push_back(y.kids[yi]);
        sides.push_back(y.ints[yi]);
      }
      return Element{ElTag::Syll, std::move(sides), {}, std::move(kids)};
    }
    case Node::FiniteIndex:
      return mul_of(*e.left, x, y);
  }
  fail(Err::Internal, "unreachable");
}

// Exponent sums (sum of a-exponents, sum of b-exponents) of the canonical
// quotient word for a C_m * C_n image.
void torus_canonical_sums(const GroupExpr& e, const Element& img, long long& ra, long long& sb) {
  ra = 0;
  sb = 0;
  if (e.a == 1 && e.b == 1) return;
  if (e.a == 1) {
    sb = img.ints[1];
    return;
  }
  if (e.b == 1) {
    ra = img.ints[1];
    return;
  }
  for (size_t i = 0; i < img.kids.size(); ++i) {
    if (img.ints[i] == 0)
      ra += img.kids[i].ints[1];
    else
      sb += img.kids[i].ints[1];
  }
}

Element torus_quotient_mul(const GroupExpr& e, const Element& x, const Element& y) {
  if (e.a == 1 && e.b == 1) return x;
  if (e.a == 1) return cyc_elem(e.b, x.ints[1] + y.ints[1]);
  if (e.b == 1) return cyc_elem(e.a, x.ints[1] + y.ints[1]);
  GroupExpr fp;
  fp.node = Node::FreeProd;
  fp.left = std::make_shared<GroupExpr>();
  fp.left->node = Node::Cyclic;
  fp.left->a = e.a;
  fp.right = std::make_shared<GroupExpr>();
  fp.right->node = Node::Cyclic;
  fp.right->a = e.b;
  return mul_of(fp, x, y);
}

Element torus_letter(const GroupExpr& e, Letter l) {
  long long m = e.a, n = e.b;
  int a = l < 0 ? -l : l;
  bool pos = l > 0;
  Element el = identity_of(e);
  if (a == 1) {  // a generator
    if (m == 1) {
      el.ints[2] = pos ? 1 : -1;
      return el;
    }
    Element img = cyc_elem(m, pos ? 1 : -1);
    if (m >= 2 && n >= 2) img = Element{ElTag::Syll, {0}, {}, {img}};
    el.kids[0] = std::move(img);
    el.ints[2] = pos ? 0 : -1;
    return el;
  }
  // b generator
  if (n == 1) {
    el.ints[2] = pos ? 1 : -1;
    return el;
  }
  Element img = cyc_elem(n, pos ? 1 : -1);
  if (m >= 2 && n >= 2) img = Element{ElTag::Syll, {1}, {}, {img}};
  el.kids[0] = std::move(img);
  el.ints[2] = pos ? 0 : -1;
  return el;
}

Element torus_mul(const GroupExpr& e, const Element& x, const Element& y) {
  long long m = e.a, n = e.b;
  Element img = torus_quotient_mul(e, x.kids[0], y.kids[0]);
  long long ra1, sb1, ra2, sb2, ra12, sb12;
  torus_canonical_sums(e, x.kids[0], ra1, sb1);
  torus_canonical_sums(e, y.kids[0], ra2, sb2);
  torus_canonical_sums(e, img, ra12, sb12);
  long long dra = ra1 + ra2 - ra12;
  long long dsb = sb1 + sb2 - sb12;
  if (dra % m != 0 || dsb % n != 0) fail(Err::Internal, "torus cocycle not integral");
  long long delta = dra / m + dsb / n;
  Element out{ElTag::Torus, {m, n, x.ints[2] + y.ints[2] + delta}, {}, {std::move(img)}};
  return out;
}

}  // namespace

Element Oracle::identity() const { return identity_of(expr_); }

Element Oracle::letter(Letter l) const {
  if (!alphabet_of(expr_).contains(l)) fail(Err::UnknownToken, "letter outside the group's alphabet");
  return letter_of(expr_, l);
}

Element Oracle::eval(const Word& w) const {
  Element acc = identity();
  for (Letter l : w) acc = mul_of(expr_, acc, letter(l));
  return acc;
}

Element Oracle::mul(const Element& x, const Element& y) const { return mul_of(expr_, x, y); }

}  // namespace lognf
