#pragma once
// Group expression trees, the expression grammar, and coset table data for
// finite-index pairs.

#include <memory>
#include <string>
#include <vector>

#include "lognf/alphabet.hpp"

namespace lognf {

enum class Node {
  Z,
  Free,
  Cyclic,
  BS,
  UT,
  Torus,
  Direct,
  Wreath,
  FreeProd,
  FiniteIndex,
};

enum class FiDirection { Sub, Super };

// Coset table for a finite-index subgroup of the group denoted by the parent
// expression.  Cosets are numbered 1..index with coset 1 the subgroup itself.
struct CosetTable {
  int index = 0;
  std::vector<Word> reps;                       // reps[0] must be the empty word
  std::vector<std::vector<int>> next;           // next[coset-1][gen-1], positive gens
  std::string source;                           // file path or "<inline>"

  int step(int coset, Letter l) const {
    int a = l < 0 ? -l : l;
    if (l > 0) return next[static_cast<size_t>(coset - 1)][static_cast<size_t>(a - 1)];
    for (int c = 1; c <= index; ++c)
      if (next[static_cast<size_t>(c - 1)][static_cast<size_t>(a - 1)] == coset) return c;
    return 0;
  }
};

struct GroupExpr {
  Node node = Node::Z;
  long long a = 0;  // Free rank / Cyclic modulus / BS p / UT r / Torus m
  long long b = 0;  // Torus n
  std::shared_ptr<GroupExpr> left;
  std::shared_ptr<GroupExpr> right;
  std::shared_ptr<CosetTable> table;   // FiniteIndex
  FiDirection direction = FiDirection::Sub;
  std::string text;  // the source spelling, for diagnostics

  bool is(Node n) const { return node == n; }
};

// Parses the expression grammar:
//   expr := "Z" | "Free("k")" | "Cyclic("m")" | "BS(1,"p")" | "UT("r")"
//         | "Torus("m","n")" | ("Direct"|"Wreath"|"FreeProd") "(" expr "," expr ")"
//         | "FiniteIndex(" expr ",@" file "," ("sub"|"super") ")"
// Coset table files are loaded and validated eagerly.
GroupExpr parse_group(const std::string& text);

// The derived symmetric alphabet of an expression.
Alphabet alphabet_of(const GroupExpr& e);

// Coset table text format:
//   line 1:            index d
//   lines 2..d+1:      representative words over the parent alphabet
//   remaining lines:   i  gen  j     (transition: coset i * gen = coset j)
// Inverse-generator lines are accepted and checked against the positive ones.
CosetTable parse_coset_table(const std::string& text, const Alphabet& parent,
                             const std::string& source_name);
CosetTable load_coset_table(const std::string& path, const Alphabet& parent);

// Validates permutation structure and that representatives trace to their own
// cosets; throws Err::BadTable.
void validate_coset_table(const CosetTable& t, const Alphabet& parent);

}  // namespace lognf
