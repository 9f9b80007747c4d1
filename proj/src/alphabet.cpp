#include "lognf/alphabet.hpp"

#include <algorithm>
#include <sstream>

namespace lognf {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
    auto [it, fresh] = index_.emplace(names_[static_cast<size_t>(i)], i + 1);
    if (!fresh) fail(Err::Internal, "duplicate generator name: " + names_[static_cast<size_t>(i)]);
  }
}

int Alphabet::index_of(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? 0 : it->second;
}

std::string Alphabet::spell(Letter l) const {
  int a = l < 0 ? -l : l;
  return l < 0 ? name(a) + "^-1" : name(a);
}

Alphabet product_alphabet(const Alphabet& left, const Alphabet& right) {
  std::vector<std::string> names;
  names.reserve(static_cast<size_t>(left.rank() + right.rank()));
  for (const auto& n : left.names()) names.push_back("0." + n);
  for (const auto& n : right.names()) names.push_back("1." + n);
  return Alphabet(std::move(names));
}

Word parse_word(const std::string& text, const Alphabet& a) {
  Word w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "\xce\xbb" || tok == "lambda") continue;  // λ
    std::string base = tok;
    long long exp = 1;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      base = tok.substr(0, caret);
      std::string e = tok.substr(caret + 1);
      if (e.empty() || e == "-" || e == "+") fail(Err::MalformedExponent, "bad exponent in '" + tok + "'");
      size_t pos = 0;
      try {
        exp = std::stoll(e, &pos);
      } catch (const std::exception&) {
        fail(Err::MalformedExponent, "bad exponent in '" + tok + "'");
      }
      if (pos != e.size() || exp == 0) fail(Err::MalformedExponent, "bad exponent in '" + tok + "'");
    }
    int idx = a.index_of(base);
    if (idx == 0) fail(Err::UnknownGenerator, "unknown generator '" + base + "'");
    Letter l = exp < 0 ? -idx : idx;
    long long count = exp < 0 ? -exp : exp;
    for (long long i = 0; i < count; ++i) w.push_back(l);
  }
  return w;
}

std::string format_word(const Word& w, const Alphabet& a) {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += a.spell(w[i]);
  }
  return out;
}

Word formal_inverse(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (auto& l : r) l = -l;
  return r;
}

int shortlex_cmp_words(const Word& u, const Word& v, const Alphabet& a) {
  if (u.size() != v.size()) return u.size() < v.size() ? -1 : 1;
  for (size_t i = 0; i < u.size(); ++i) {
    int ku = a.order_key(u[i]), kv = a.order_key(v[i]);
    if (ku != kv) return ku < kv ? -1 : 1;
  }
  return 0;
}

}  // namespace lognf
