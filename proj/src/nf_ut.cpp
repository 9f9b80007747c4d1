#include "lognf/nf_ut.hpp"

#include <cmath>
#include <vector>

namespace lognf {

namespace {

struct EIdx {
  int i, j;
};

std::vector<EIdx> diag_major(int r) {
  std::vector<EIdx> v;
  for (int d = 1; d < r; ++d)
    for (int i = 1; i + d <= r; ++i) v.push_back({i, i + d});
  return v;
}

long long checked_addmul(long long acc, long long x, long long y) {
  long long p, s;
  if (__builtin_mul_overflow(x, y, &p) || __builtin_add_overflow(acc, p, &s))
    fail(Err::Overflow, "unitriangular entry overflow");
  return s;
}

class UtNf : public Transducer {
 public:
  UtNf(const Alphabet& a, int r) : Transducer(a, a), r_(r), idx_(diag_major(r)) {}

  LetterStream emit(LetterSource& in, Exec& ex) const override {
    const int r = r_;
    // Strict upper entries, row-major over pairs i<j; diagonal ones implicit.
    std::vector<Reg> m;
    for (int i = 1; i < r; ++i)
      for (int j = i + 1; j <= r; ++j) {
        (void)j;
        m.emplace_back(ex, 0);
      }
    auto at = [&](int i, int j) -> Reg& {  // 1-based, i < j
      int off = (i - 1) * (2 * r - i) / 2;
      return m[static_cast<size_t>(off + (j - i - 1))];
    };
    auto get = [&](int i, int j) -> long long {
      if (i == j) return 1;
      if (i > j) return 0;
      return at(i, j).get();
    };

    // Evaluate the word: right-multiply by E_{i,j}^{+-1} per letter.
    Reg n(ex, 0);
    for (;;) {
      Letter l = in.at(n.get() + 1);
      if (l == 0) break;
      ++n;
      int a = l < 0 ? -l : l;
      const EIdx& e = idx_[static_cast<size_t>(a - 1)];
      long long sgn = l > 0 ? 1 : -1;
      // column j += sgn * column i, rows 1..i
      for (int k = 1; k <= e.i; ++k)
        at(k, e.j) = checked_addmul(at(k, e.j).get(), sgn, get(k, e.i));
    }

    // Peel superdiagonals, emitting exponent blocks and applying the
    // inverse corrections on the left.
    double ln_n = n.get() > 0 ? std::log(static_cast<double>(n.get())) : 0.0;
    double ld = 0.0;  // ln D_stage
    double kk = 1.0;  // k_stage
    for (int d = 1; d < r; ++d) {
      for (int i = 1; i + d <= r; ++i) {
        long long alpha = at(i, i + d).get();
        Letter gen = letter_for(i, i + d);
        Reg c(ex, alpha >= 0 ? alpha : -alpha);
        while (c.get() > 0) {
          --c;
          co_yield alpha >= 0 ? gen : -gen;
        }
        // left-multiply by E_{i,i+d}^{-alpha}: row_i += -alpha * row_{i+d}
        for (int col = i + d; col <= r; ++col)
          at(i, col) = checked_addmul(at(i, col).get(), -alpha, get(i + d, col));
      }
      // Residual entries must respect the peeling budget.
      ld = std::log(static_cast<double>(r)) + static_cast<double>(r) * ld + std::log(2.0);
      kk *= static_cast<double>(r);
      double budget = (static_cast<double>(r) - 1.0) * (ld + kk * ln_n) + 1.0;
      for (int i = 1; i < r; ++i)
        for (int j = i + 1; j <= r; ++j) {
          long long v = at(i, j).get();
          double lv = v == 0 ? 0.0 : std::log(std::fabs(static_cast<double>(v)));
          if (lv > budget) fail(Err::Internal, "peeling exceeded the entry budget");
        }
    }
    for (int i = 1; i < r; ++i)
      for (int j = i + 1; j <= r; ++j)
        if (at(i, j).get() != 0) fail(Err::Internal, "peeling left a nonzero residual");
  }

 private:
  Letter letter_for(int i, int j) const {
    for (size_t k = 0; k < idx_.size(); ++k)
      if (idx_[k].i == i && idx_[k].j == j) return static_cast<Letter>(k + 1);
    fail(Err::BadIndex, "no generator for that matrix position");
  }

  int r_;
  std::vector<EIdx> idx_;
};

}  // namespace

TransducerPtr make_ut_nf(const Alphabet& a, int r) { return std::make_shared<UtNf>(a, r); }

bool ut_entry_bound_check(const Word& w, int r) {
  auto idx = diag_major(r);
  std::vector<std::vector<long long>> m(static_cast<size_t>(r),
                                        std::vector<long long>(static_cast<size_t>(r), 0));
  for (int i = 0; i < r; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
  for (Letter l : w) {
    int a = l < 0 ? -l : l;
    if (a < 1 || a > static_cast<int>(idx.size())) fail(Err::UnknownToken, "bad UT letter");
    const EIdx& e = idx[static_cast<size_t>(a - 1)];
    long long sgn = l > 0 ? 1 : -1;
    for (int k = 1; k <= e.i; ++k)
      m[static_cast<size_t>(k - 1)][static_cast<size_t>(e.j - 1)] = checked_addmul(
          m[static_cast<size_t>(k - 1)][static_cast<size_t>(e.j - 1)], sgn,
          m[static_cast<size_t>(k - 1)][static_cast<size_t>(e.i - 1)]);
  }
  long long n = static_cast<long long>(w.size());
  for (int d = 1; d < r; ++d) {
    long long bound = 1;
    for (int t = 0; t < d; ++t) {
      if (__builtin_mul_overflow(bound, n, &bound)) fail(Err::Overflow, "bound overflow");
    }
    for (int i = 1; i + d <= r; ++i) {
      long long v = m[static_cast<size_t>(i - 1)][static_cast<size_t>(i + d - 1)];
      if ((v >= 0 ? v : -v) > bound) return false;
    }
  }
  return true;
}

}  // namespace lognf
