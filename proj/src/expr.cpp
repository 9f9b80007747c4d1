#include "lognf/expr.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace lognf {

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  [[noreturn]] void err(const std::string& msg) {
    fail(Err::SyntaxError, msg + " at position " + std::to_string(pos));
  }
  void expect(char c) {
    skip_ws();
    if (pos >= s.size() || s[pos] != c) err(std::string("expected '") + c + "'");
    ++pos;
  }
  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    if (pos == start) err("expected a name");
    return s.substr(start, pos - start);
  }
  long long integer() {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) err("expected an integer");
    return std::stoll(s.substr(start, pos - start));
  }
  std::string until_comma_or_paren() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && s[pos] != ',' && s[pos] != ')') ++pos;
    std::string out = s.substr(start, pos - start);
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
    return out;
  }

  GroupExpr expr() {
    size_t start = pos;
    std::string head = ident();
    GroupExpr e;
    if (head == "Z") {
      e.node = Node::Z;
    } else if (head == "Free") {
      expect('(');
      e.node = Node::Free;
      e.a = integer();
      expect(')');
      if (e.a < 1) fail(Err::ArityError, "Free(k) needs k >= 1");
    } else if (head == "Cyclic") {
      expect('(');
      e.node = Node::Cyclic;
      e.a = integer();
      expect(')');
      if (e.a < 2) fail(Err::ArityError, "Cyclic(m) needs m >= 2");
    } else if (head == "BS") {
      expect('(');
      long long one = integer();
      expect(',');
      e.node = Node::BS;
      e.a = integer();
      expect(')');
      if (one != 1) fail(Err::ArityError, "only BS(1,p) is supported");
      if (e.a < 2) fail(Err::ArityError, "BS(1,p) needs p >= 2");
    } else if (head == "UT") {
      expect('(');
      e.node = Node::UT;
      e.a = integer();
      expect(')');
      if (e.a < 2) fail(Err::ArityError, "UT(r) needs r >= 2");
      if (e.a > 8) fail(Err::ArityError, "UT(r) supports r <= 8");
    } else if (head == "Torus") {
      expect('(');
      e.node = Node::Torus;
      e.a = integer();
      expect(',');
      e.b = integer();
      expect(')');
      if (e.a < 1 || e.b < 1) fail(Err::ArityError, "Torus(m,n) needs m,n >= 1");
    } else if (head == "Direct" || head == "Wreath" || head == "FreeProd") {
      expect('(');
      e.node = head == "Direct" ? Node::Direct : head == "Wreath" ? Node::Wreath : Node::FreeProd;
      e.left = std::make_shared<GroupExpr>(expr());
      expect(',');
      e.right = std::make_shared<GroupExpr>(expr());
      expect(')');
    } else if (head == "FiniteIndex") {
      expect('(');
      e.node = Node::FiniteIndex;
      e.left = std::make_shared<GroupExpr>(expr());
      expect(',');
      skip_ws();
      if (pos >= s.size() || s[pos] != '@') err("expected '@file'");
      ++pos;
      std::string path = until_comma_or_paren();
      if (path.empty()) err("empty coset table path");
      expect(',');
      std::string dir = ident();
      expect(')');
      if (dir == "sub")
        e.direction = FiDirection::Sub;
      else if (dir == "super")
        e.direction = FiDirection::Super;
      else
        fail(Err::SyntaxError, "direction must be 'sub' or 'super'");
      e.table = std::make_shared<CosetTable>(load_coset_table(path, alphabet_of(*e.left)));
    } else {
      err("unknown constructor '" + head + "'");
    }
    e.text = s.substr(start, pos - start);
    return e;
  }
};

std::vector<std::string> ut_names(int r) {
  std::vector<std::string> names;
  for (int d = 1; d < r; ++d)
    for (int i = 1; i + d <= r; ++i)
      names.push_back("e." + std::to_string(i) + "." + std::to_string(i + d));
  return names;
}

}  // namespace

GroupExpr parse_group(const std::string& text) {
  Parser p(text);
  GroupExpr e = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.err("trailing characters");
  return e;
}

Alphabet alphabet_of(const GroupExpr& e) {
  switch (e.node) {
    case Node::Z:
      return Alphabet({"t"});
    case Node::Free: {
      std::vector<std::string> names;
      for (long long i = 1; i <= e.a; ++i) names.push_back("x" + std::to_string(i));
      return Alphabet(names);
    }
    case Node::Cyclic:
      return Alphabet({"c"});
    case Node::BS:
      return Alphabet({"a", "t"});
    case Node::UT:
      return Alphabet(ut_names(static_cast<int>(e.a)));
    case Node::Torus:
      return Alphabet({"a", "b"});
    case Node::Direct:
    case Node::Wreath:
    case Node::FreeProd:
      return product_alphabet(alphabet_of(*e.left), alphabet_of(*e.right));
    case Node::FiniteIndex: {
      if (e.direction == FiDirection::Sub) {
        // One letter per nontrivial Schreier generator; names assigned in
        // enumeration order over (coset, positive generator).
        Alphabet parent = alphabet_of(*e.left);
        int m = 0;
        std::vector<std::string> names;
        for (int c = 1; c <= e.table->index; ++c)
          for (int g = 1; g <= parent.rank(); ++g) {
            Word w = e.table->reps[static_cast<size_t>(c - 1)];
            w.push_back(g);
            int target = e.table->step(c, g);
            Word q = e.table->reps[static_cast<size_t>(target - 1)];
            for (auto it = q.rbegin(); it != q.rend(); ++it) w.push_back(-*it);
            // Freely trivial Schreier generators are omitted.
            Word red;
            for (Letter l : w) {
              if (!red.empty() && red.back() == -l)
                red.pop_back();
              else
                red.push_back(l);
            }
            if (!red.empty()) names.push_back("x" + std::to_string(++m));
          }
        return Alphabet(names);
      }
      // Super direction: joint generating set, subgroup letters then parent's.
      Alphabet parent = alphabet_of(*e.left);
      GroupExpr sub = e;
      sub.direction = FiDirection::Sub;
      Alphabet subalpha = alphabet_of(sub);
      std::vector<std::string> names;
      for (const auto& n : subalpha.names()) names.push_back("s." + n);
      for (const auto& n : parent.names()) names.push_back(n);
      return Alphabet(names);
    }
  }
  fail(Err::Internal, "unreachable");
}

CosetTable parse_coset_table(const std::string& text, const Alphabet& parent,
                             const std::string& source_name) {
  CosetTable t;
  t.source = source_name;
  std::istringstream in(text);
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      size_t h = line.find('#');
      if (h != std::string::npos) line = line.substr(0, h);
      bool blank = true;
      for (char c : line)
        if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
      if (!blank) return true;
    }
    return false;
  };

  if (!next_line()) fail(Err::BadTable, source_name + ": empty table");
  {
    std::istringstream hl(line);
    std::string kw;
    hl >> kw >> t.index;
    if (kw != "index" || t.index < 1) fail(Err::BadTable, source_name + ": bad header line");
  }
  for (int i = 0; i < t.index; ++i) {
    if (!next_line()) fail(Err::BadTable, source_name + ": missing representative");
    t.reps.push_back(parse_word(line, parent));
  }
  if (!t.reps[0].empty()) fail(Err::BadTable, source_name + ": first representative must be the empty word");
  t.next.assign(static_cast<size_t>(t.index), std::vector<int>(static_cast<size_t>(parent.rank()), 0));
  std::vector<std::vector<int>> inv(static_cast<size_t>(t.index),
                                    std::vector<int>(static_cast<size_t>(parent.rank()), 0));
  while (next_line()) {
    std::istringstream tl(line);
    int i = 0, j = 0;
    std::string gen;
    if (!(tl >> i >> gen >> j)) fail(Err::BadTable, source_name + ": bad transition line: " + line);
    if (i < 1 || i > t.index || j < 1 || j > t.index)
      fail(Err::BadTable, source_name + ": coset out of range: " + line);
    bool negative = false;
    if (gen.size() > 3 && gen.substr(gen.size() - 3) == "^-1") {
      negative = true;
      gen = gen.substr(0, gen.size() - 3);
    }
    int g = parent.index_of(gen);
    if (g == 0) fail(Err::BadTable, source_name + ": unknown generator: " + gen);
    auto& cell = negative ? inv[static_cast<size_t>(i - 1)][static_cast<size_t>(g - 1)]
                          : t.next[static_cast<size_t>(i - 1)][static_cast<size_t>(g - 1)];
    if (cell != 0 && cell != j) fail(Err::BadTable, source_name + ": conflicting transition: " + line);
    cell = j;
  }
  for (int c = 1; c <= t.index; ++c)
    for (int g = 1; g <= parent.rank(); ++g) {
      int fwd = t.next[static_cast<size_t>(c - 1)][static_cast<size_t>(g - 1)];
      if (fwd == 0) fail(Err::BadTable, source_name + ": missing transition for coset " +
                                            std::to_string(c) + " on " + parent.name(g));
      int back = inv[static_cast<size_t>(fwd - 1)][static_cast<size_t>(g - 1)];
      if (back != 0 && back != c)
        fail(Err::BadTable, source_name + ": inverse transition disagrees for " + parent.name(g));
    }
  validate_coset_table(t, parent);
  return t;
}

CosetTable load_coset_table(const std::string& path, const Alphabet& parent) {
  std::ifstream f(path);
  if (!f) fail(Err::Io, "cannot open coset table file '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_coset_table(buf.str(), parent, path);
}

void validate_coset_table(const CosetTable& t, const Alphabet& parent) {
  // Each positive generator acts as a permutation of the cosets.
  for (int g = 1; g <= parent.rank(); ++g) {
    std::vector<bool> seen(static_cast<size_t>(t.index), false);
    for (int c = 1; c <= t.index; ++c) {
      int j = t.next[static_cast<size_t>(c - 1)][static_cast<size_t>(g - 1)];
      if (j < 1 || j > t.index || seen[static_cast<size_t>(j - 1)])
        fail(Err::BadTable, t.source + ": generator " + parent.name(g) + " is not a permutation");
      seen[static_cast<size_t>(j - 1)] = true;
    }
  }
  // Representatives trace from coset 1 to their own coset.
  for (int c = 1; c <= t.index; ++c) {
    int at = 1;
    for (Letter l : t.reps[static_cast<size_t>(c - 1)]) {
      at = t.step(at, l);
      if (at == 0) fail(Err::BadTable, t.source + ": representative walks off the table");
    }
    if (at != c)
      fail(Err::BadTable, t.source + ": representative " + std::to_string(c) +
                              " does not reach its coset");
  }
}

}  // namespace lognf
