#pragma once
// Shared test helpers: expression shorthands, random and trivially-padded
// words, and independent normal-form reconstructions from exact oracle
// values (the second route the machines are checked against).

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "lognf/factory.hpp"
#include "lognf/sweep.hpp"

namespace testsup {

using namespace lognf;

inline GroupExpr E(const std::string& text) { return parse_group(text); }

inline GroupExpr fidx(const std::string& parent_text, const std::string& table_text,
                      FiDirection dir) {
  GroupExpr e;
  e.node = Node::FiniteIndex;
  e.left = std::make_shared<GroupExpr>(parse_group(parent_text));
  e.direction = dir;
  e.table = std::make_shared<CosetTable>(
      parse_coset_table(table_text, alphabet_of(*e.left), "<inline>"));
  e.text = "FiniteIndex(" + parent_text + ",<inline>," +
           std::string(dir == FiDirection::Sub ? "sub" : "super") + ")";
  return e;
}

inline const std::string k2zTable = "index 2\nlambda\nt\n1 t 2\n2 t 1\n";
// Even-length-word subgroup of Free(2); representatives {lambda, x2}.
inline const std::string kEvenF2Table =
    "index 2\nlambda\nx2\n1 x1 2\n2 x1 1\n1 x2 2\n2 x2 1\n";

// Words known to represent the identity, used to pad equal pairs.
inline std::vector<Word> relators(const GroupExpr& e) {
  std::vector<Word> out;
  auto shift = [](const Word& w, int off) {
    Word r;
    for (Letter l : w) r.push_back(l > 0 ? l + off : l - off);
    return r;
  };
  switch (e.node) {
    case Node::Z:
    case Node::Free:
      break;
    case Node::Cyclic: {
      Word w(static_cast<size_t>(e.a), 1);
      out.push_back(w);
      break;
    }
    case Node::BS: {
      Word w{2, 1, -2};
      for (long long i = 0; i < e.a; ++i) w.push_back(-1);
      out.push_back(w);
      break;
    }
    case Node::UT: {
      int r = static_cast<int>(e.a);
      auto letter = [&](int i, int j) {
        int k = 0;
        for (int d = 1; d < r; ++d)
          for (int ii = 1; ii + d <= r; ++ii) {
            ++k;
            if (ii == i && ii + d == j) return k;
          }
        return 0;
      };
      for (int i = 1; i + 2 <= r; ++i) {
        int a = letter(i, i + 1), b = letter(i + 1, i + 2), c = letter(i, i + 2);
        out.push_back({static_cast<Letter>(a), static_cast<Letter>(b), static_cast<Letter>(-a),
                       static_cast<Letter>(-b), static_cast<Letter>(-c)});
      }
      if (r >= 4) {
        int a = letter(1, 2), b = letter(3, 4);
        out.push_back({static_cast<Letter>(a), static_cast<Letter>(b), static_cast<Letter>(-a),
                       static_cast<Letter>(-b)});
      }
      break;
    }
    case Node::Torus: {
      Word w(static_cast<size_t>(e.a), 1);
      for (long long i = 0; i < e.b; ++i) w.push_back(-2);
      out.push_back(w);
      break;
    }
    case Node::Direct: {
      int off = alphabet_of(*e.left).rank();
      for (const auto& w : relators(*e.left)) out.push_back(w);
      for (const auto& w : relators(*e.right)) out.push_back(shift(w, off));
      out.push_back({1, static_cast<Letter>(off + 1), -1, static_cast<Letter>(-(off + 1))});
      break;
    }
    case Node::Wreath: {
      int off = alphabet_of(*e.left).rank();
      for (const auto& w : relators(*e.left)) out.push_back(w);
      for (const auto& w : relators(*e.right)) out.push_back(shift(w, off));
      Letter g = 1, h = static_cast<Letter>(off + 1);
      out.push_back({g, h, g, -h, -g, h, -g, -h});
      break;
    }
    case Node::FreeProd: {
      int off = alphabet_of(*e.left).rank();
      for (const auto& w : relators(*e.left)) out.push_back(w);
      for (const auto& w : relators(*e.right)) out.push_back(shift(w, off));
      break;
    }
    case Node::FiniteIndex: {
      if (e.direction == FiDirection::Super) {
        Alphabet parent = alphabet_of(*e.left);
        auto words = schreier_words(*e.table, parent);
        int sub_rank = static_cast<int>(words.size());
        for (int i = 0; i < sub_rank; ++i) {
          Word w{static_cast<Letter>(i + 1)};
          Word img = formal_inverse(words[static_cast<size_t>(i)]);
          for (Letter l : img) w.push_back(l > 0 ? l + sub_rank : l - sub_rank);
          out.push_back(w);
        }
      }
      break;
    }
  }
  return out;
}

// A word equal to u in the group: u with canceling pairs and relators
// inserted at random positions.
inline Word pad_trivial(const GroupExpr& e, const Alphabet& a, const Word& u,
                        std::mt19937_64& rng, int inserts) {
  std::vector<Word> rels = relators(e);
  Word w = u;
  for (int k = 0; k < inserts; ++k) {
    Word ins;
    int kind = static_cast<int>(rng() % (rels.empty() ? 1 : 3));
    if (kind == 0 || rels.empty()) {
      int idx = static_cast<int>(rng() % static_cast<unsigned long long>(a.rank())) + 1;
      Letter l = rng() % 2 ? idx : -idx;
      ins = {l, -l};
    } else {
      ins = rels[rng() % rels.size()];
      if (kind == 2) ins = formal_inverse(ins);
    }
    size_t pos = w.empty() ? 0 : rng() % (w.size() + 1);
    w.insert(w.begin() + static_cast<long>(pos), ins.begin(), ins.end());
  }
  return w;
}

inline Element inv_element(const GroupExpr& e, const Element& x) {
  switch (e.node) {
    case Node::Z:
      return Element{ElTag::Z, {-x.ints[0]}, {}, {}};
    case Node::Cyclic:
      return Element{ElTag::Cyc, {x.ints[0], (x.ints[0] - x.ints[1]) % x.ints[0]}, {}, {}};
    case Node::Free: {
      Element r{ElTag::Free, {x.ints[0]}, {}, {}};
      for (size_t i = x.ints.size(); i > 1; --i) r.ints.push_back(-x.ints[i - 1]);
      return r;
    }
    case Node::Direct:
      return Element{ElTag::Pair,
                     {},
                     {},
                     {inv_element(*e.left, x.kids[0]), inv_element(*e.right, x.kids[1])}};
    default:
      fail(Err::Internal, "inverse not implemented for this family in tests");
  }
}

// Independent reconstruction of the normal-form word from the exact value.
inline Word nf_from_element(const GroupExpr& e, const Element& x);

inline Word run_nf(const Built& b, const Word& w) { return run(*b.nf, w).output; }

namespace detail {

inline void append_run(Word& w, Letter l, long long count) {
  for (long long i = 0; i < count; ++i) w.push_back(l);
}

inline Word bs_nf_from(const Element& x) {
  long long p = x.ints[0], i = x.ints[1], ee = x.ints[2];
  mpz_class num = x.bigs[0];
  Word out;
  int sign = num < 0 ? -1 : 1;
  mpz_class mag = num < 0 ? mpz_class(-num) : num;
  long long j = 0;
  while (mag != 0) {
    long long digit = mpz_class(mag % static_cast<long>(p)).get_si();
    long long alpha = ee - j;
    if (digit != 0) {
      append_run(out, alpha >= 0 ? -2 : 2, alpha >= 0 ? alpha : -alpha);
      append_run(out, sign > 0 ? 1 : -1, digit);
      append_run(out, alpha >= 0 ? 2 : -2, alpha >= 0 ? alpha : -alpha);
    }
    mag /= static_cast<long>(p);
    ++j;
  }
  append_run(out, i >= 0 ? 2 : -2, i >= 0 ? i : -i);
  return out;
}

inline Word wreath_nf_from(const GroupExpr& e, const Element& x) {
  const GroupExpr& lampG = *e.left;
  const GroupExpr& baseG = *e.right;
  Alphabet base_alpha = alphabet_of(baseG);
  int lamp_off = alphabet_of(lampG).rank();
  struct Item {
    Word key_nf;
    Word lamp_nf;
    Word key_inv_nf;
  };
  std::vector<Item> items;
  for (size_t i = 1; i + 1 < x.kids.size(); i += 2) {
    Item it;
    it.key_nf = nf_from_element(baseG, x.kids[i]);
    it.lamp_nf = nf_from_element(lampG, x.kids[i + 1]);
    it.key_inv_nf = nf_from_element(baseG, inv_element(baseG, x.kids[i]));
    items.push_back(std::move(it));
  }
  std::sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
    return shortlex_cmp_words(a.key_nf, b.key_nf, base_alpha) < 0;
  });
  Word out;
  auto shift = [&](const Word& w) {
    for (Letter l : w) out.push_back(l > 0 ? l + lamp_off : l - lamp_off);
  };
  for (const auto& it : items) {
    shift(it.key_nf);
    out.insert(out.end(), it.lamp_nf.begin(), it.lamp_nf.end());
    shift(it.key_inv_nf);
  }
  shift(nf_from_element(baseG, x.kids[0]));
  return out;
}

}  // namespace detail

inline Word nf_from_element(const GroupExpr& e, const Element& x) {
  switch (e.node) {
    case Node::Z: {
      Word w;
      detail::append_run(w, x.ints[0] >= 0 ? 1 : -1, x.ints[0] >= 0 ? x.ints[0] : -x.ints[0]);
      return w;
    }
    case Node::Cyclic: {
      Word w;
      detail::append_run(w, 1, x.ints[1]);
      return w;
    }
    case Node::Free:
      return Word(x.ints.begin() + 1, x.ints.end());
    case Node::BS:
      return detail::bs_nf_from(x);
    case Node::Direct: {
      Word w = nf_from_element(*e.left, x.kids[0]);
      int off = alphabet_of(*e.left).rank();
      for (Letter l : nf_from_element(*e.right, x.kids[1]))
        w.push_back(l > 0 ? l + off : l - off);
      return w;
    }
    case Node::Wreath:
      return detail::wreath_nf_from(e, x);
    case Node::FreeProd: {
      int off = alphabet_of(*e.left).rank();
      Word w;
      for (size_t i = 0; i < x.kids.size(); ++i) {
        Word part = nf_from_element(x.ints[i] == 0 ? *e.left : *e.right, x.kids[i]);
        for (Letter l : part) w.push_back(x.ints[i] == 0 ? l : (l > 0 ? l + off : l - off));
      }
      return w;
    }
    default:
      fail(Err::Internal, "nf_from_element not implemented for this family in tests");
  }
}

}  // namespace testsup
