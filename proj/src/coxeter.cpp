#include "gkm/coxeter.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "gkm/error.hpp"

namespace gkm {

namespace {

// Off-diagonal Cartan pair (c_st, c_ts) for each supported bond order.
void cartan_pair(int m, int* cst, int* cts) {
  switch (m) {
    case 2: *cst = 0, *cts = 0; break;
    case 3: *cst = -1, *cts = -1; break;
    case 4: *cst = -1, *cts = -2; break;
    case 6: *cst = -1, *cts = -3; break;
    case 0: *cst = -2, *cts = -2; break;  // infinite bond
    default:
      fail("Unsupported", "bond order " + std::to_string(m) +
                              " (supported: 2, 3, 4, 6, infinity)");
  }
}

void check_cox(const CoxMatrix& cox) {
  const int n = static_cast<int>(cox.size());
  if (n == 0) fail("Unsupported", "empty Coxeter matrix");
  for (int s = 0; s < n; ++s) {
    if (static_cast<int>(cox[s].size()) != n)
      fail("Unsupported", "Coxeter matrix is not square");
    if (cox[s][s] != 1) fail("Unsupported", "Coxeter matrix diagonal must be 1");
    for (int t = 0; t < n; ++t) {
      if (t != s && cox[s][t] != cox[t][s])
        fail("Unsupported", "Coxeter matrix is not symmetric");
      if (t != s && cox[s][t] != 0 && cox[s][t] < 2)
        fail("Unsupported", "off-diagonal Coxeter entries must be >= 2 or 0");
    }
  }
}

std::vector<std::string> default_labels(int rank) {
  // Up to three generators get the traditional s, t, u.
  if (rank <= 3) {
    static const char* named[] = {"s", "t", "u"};
    return std::vector<std::string>(named, named + rank);
  }
  std::vector<std::string> out;
  for (int i = 0; i < rank; ++i) out.push_back("s" + std::to_string(i));
  return out;
}

// Two-colored quantum numbers: with x = c_st * c_ts split as ordered pair,
// [2]_x = x, [k+1]_x = x * [k]_y - [k-1]_x, colors alternating. A bond of
// order m is balanced when [m-1] is 1 in both colors.
Rational quantum(int k, const Rational& x, const Rational& y) {
  if (k <= 0) return 0;
  if (k == 1) return 1;
  if (k == 2) return x;
  return x * quantum(k - 1, y, x) - quantum(k - 2, x, y);
}

}  // namespace

Realization canonical_realization(const CoxMatrix& cox) {
  check_cox(cox);
  const int n = static_cast<int>(cox.size());
  Realization r;
  r.name = "root-basis";
  r.rank = n;
  r.dim = n;
  r.cox = cox;
  r.roots = QMat::Identity(n, n);
  r.coroots = QMat::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    r.coroots(s, s) = 2;
    for (int t = 0; t < n; ++t) {
      if (t == s) continue;
      int cst, cts;
      cartan_pair(cox[s][t], &cst, &cts);
      // Asymmetric orders break ties by index so the matrix is well defined.
      r.coroots(s, t) = s < t ? cst : cts;
    }
  }
  r.labels = default_labels(n);
  return r;
}

Realization preset_realization(const std::string& name) {
  auto canon = [](CoxMatrix cox, const std::string& nm) {
    Realization r = canonical_realization(cox);
    r.name = nm;
    return r;
  };
  if (name == "a1") return canon({{1}}, name);
  if (name == "a2") return canon({{1, 3}, {3, 1}}, name);
  if (name == "b2") return canon({{1, 4}, {4, 1}}, name);
  if (name == "g2") return canon({{1, 6}, {6, 1}}, name);
  if (name.rfind("universal", 0) == 0 && name.size() == 10 &&
      name[9] >= '2' && name[9] <= '9') {
    const int n = name[9] - '0';
    CoxMatrix cox(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) cox[i][i] = 1;
    return canon(cox, name);
  }
  if (name == "affine-a2") {
    // Rank 3 on a 4-dimensional space; the extra coordinate carries the
    // invariant form delta = alpha_s + alpha_t + alpha_u = (0,0,0,1).
    Realization r;
    r.name = name;
    r.rank = 3;
    r.dim = 4;
    r.cox = {{1, 3, 3}, {3, 1, 3}, {3, 3, 1}};
    r.roots = QMat(4, 3);
    r.roots << 2, -1, -1,
              -1, 2, -1,
              -1, -1, 2,
               0, 0, 1;
    r.coroots = QMat::Zero(3, 4);
    r.coroots(0, 0) = 1;
    r.coroots(1, 1) = 1;
    r.coroots(2, 2) = 1;
    r.labels = {"s", "t", "u"};
    return r;
  }
  fail("Unsupported", "unknown preset group '" + name + "'");
}

Group::Group(Realization r) : real_(std::move(r)) {
  check_cox(real_.cox);
  if (real_.roots.rows() != real_.dim || real_.roots.cols() != real_.rank ||
      real_.coroots.rows() != real_.rank || real_.coroots.cols() != real_.dim)
    fail("Unsupported", "realization root/coroot shapes do not match rank/dim");
  if (real_.labels.empty()) real_.labels = default_labels(real_.rank);
  canon_ = canonical_realization(real_.cox);
  gen_user_.reserve(real_.rank);
  gen_canon_.reserve(real_.rank);
  for (int s = 0; s < real_.rank; ++s) {
    gen_user_.push_back(QMat::Identity(real_.dim, real_.dim) -
                        real_.roots.col(s) * real_.coroots.row(s));
    gen_canon_.push_back(QMat::Identity(real_.rank, real_.rank) -
                         canon_.roots.col(s) * canon_.coroots.row(s));
  }
  validate();
}

void Group::validate() const {
  const int n = real_.rank;
  for (int s = 0; s < n; ++s) {
    if (real_.pairing(s, s) != 2)
      fail("UnbalancedRealization",
           "<alpha_" + real_.labels[s] + "^vee, alpha_" + real_.labels[s] + "> != 2");
  }
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      const int m = real_.cox[s][t];
      const Rational x = real_.pairing(s, t);
      const Rational y = real_.pairing(t, s);
      if (m == 0) {
        if (x * y < 4)
          fail("InfiniteEdgeTooSmall",
               "infinite bond " + real_.labels[s] + real_.labels[t] +
                   " has pairing product " + rat_str(x * y) + " < 4");
        continue;
      }
      // Two-colored quantum numbers are written in -<.,.>; for m = 2 the
      // condition [1] = 1 is vacuous and the braid check below decides.
      const Rational qx = -x, qy = -y;
      if (m > 2 && (quantum(m - 1, qx, qy) != 1 || quantum(m - 1, qy, qx) != 1))
        fail("UnbalancedRealization",
             "bond " + real_.labels[s] + real_.labels[t] + " of order " +
                 std::to_string(m) + " is not balanced");
      // The braid relation must hold on the nose in the user realization.
      QMat p = gen_user_[s] * gen_user_[t];
      QMat pw = QMat::Identity(real_.dim, real_.dim);
      for (int k = 0; k < m; ++k) pw = pw * p;
      if (pw != QMat::Identity(real_.dim, real_.dim))
        fail("UnbalancedRealization",
             "(M_" + real_.labels[s] + " M_" + real_.labels[t] + ")^" +
                 std::to_string(m) + " != id in the realization");
    }
  }
}

int Group::generator_index(const std::string& label) const {
  for (int s = 0; s < real_.rank; ++s)
    if (real_.labels[s] == label) return s;
  fail("Unsupported", "unknown generator '" + label + "'");
}

bool Group::canon_right_descent(const QMat& m, int s) const {
  // ws < w iff w(alpha_s) is a negative root; in the root basis that is
  // "column s of m has all entries <= 0".
  for (int i = 0; i < canon_.rank; ++i)
    if (m(i, s) > 0) return false;
  return true;
}

Element Group::make(QMat m, QMat minv) const {
  Element w;
  w.m_ = std::move(m);
  w.minv_ = std::move(minv);
  // Peel the lex-least left descent repeatedly: s is a left descent of w
  // exactly when it is a right descent of w^{-1}.
  QMat cur = w.m_, curinv = w.minv_;
  const QMat id = QMat::Identity(canon_.rank, canon_.rank);
  while (cur != id) {
    int s = -1;
    for (int k = 0; k < canon_.rank; ++k) {
      if (canon_right_descent(curinv, k)) {
        s = k;
        break;
      }
    }
    if (s < 0) fail("Unsupported", "normal form extraction stuck (bad realization)");
    w.word_.push_back(s);
    cur = gen_canon_[s] * cur;
    curinv = curinv * gen_canon_[s];
  }
  return w;
}

Element Group::id() const {
  Element w;
  w.m_ = QMat::Identity(canon_.rank, canon_.rank);
  w.minv_ = w.m_;
  return w;
}

Element Group::gen(int s) const {
  Element w;
  w.word_ = {s};
  w.m_ = gen_canon_[s];
  w.minv_ = gen_canon_[s];
  return w;
}

Element Group::mul(const Element& a, const Element& b) const {
  return make(a.m_ * b.m_, b.minv_ * a.minv_);
}

Element Group::mul(const Element& a, int s) const { return mul(a, gen(s)); }
Element Group::mul(int s, const Element& a) const { return mul(gen(s), a); }

Element Group::inv(const Element& a) const { return make(a.minv_, a.m_); }

Element Group::from_word(const std::vector<int>& word) const {
  QMat m = QMat::Identity(canon_.rank, canon_.rank);
  QMat minv = m;
  for (int s : word) {
    if (s < 0 || s >= real_.rank) fail("Unsupported", "generator index out of range");
    m = m * gen_canon_[s];
    minv = gen_canon_[s] * minv;
  }
  return make(std::move(m), std::move(minv));
}

bool Group::is_reduced(const std::vector<int>& word) const {
  return from_word(word).length() == static_cast<int>(word.size());
}

bool Group::right_descent(const Element& w, int s) const {
  return canon_right_descent(w.m_, s);
}

bool Group::left_descent(const Element& w, int s) const {
  return canon_right_descent(w.minv_, s);
}

const QMat& Group::matrix(const Element& w) const {
  auto it = matrix_cache_.find(w.word());
  if (it != matrix_cache_.end()) return it->second;
  QMat m = QMat::Identity(real_.dim, real_.dim);
  for (int s : w.word()) m = m * gen_user_[s];
  return matrix_cache_.emplace(w.word(), std::move(m)).first->second;
}

Poly Group::act(const Element& w, const Poly& f) const {
  return f.substituted(matrix(w));
}

RatFun Group::act(const Element& w, const RatFun& f) const {
  return f.substituted(matrix(w));
}

Poly Group::root(int s) const {
  QVec col(real_.dim);
  for (int i = 0; i < real_.dim; ++i) col(i) = real_.roots(i, s);
  return Poly::linear(col);
}

QVec Group::coroot(int s) const {
  QVec row(real_.dim);
  for (int i = 0; i < real_.dim; ++i) row(i) = real_.coroots(s, i);
  return row;
}

Rational Group::coroot_pair(int s, const Poly& linear) const {
  QVec v = linear.linear_coeffs();
  Rational out = 0;
  for (int i = 0; i < real_.dim; ++i) out += real_.coroots(s, i) * v(i);
  return out;
}

Poly Group::demazure(int s, const Poly& f) const {
  Poly num = f - act(gen(s), f);
  if (num.is_zero()) return Poly::zero(real_.dim);
  return num.divided_exact(root(s));
}

bool Group::bruhat_leq(const Element& x, const Element& y) const {
  if (x.length() > y.length()) return false;
  if (x.length() == y.length()) return x == y;
  if (y.is_id()) return x.is_id();
  // Lifting: for any right descent s of y, x <= y iff min(x, xs) <= ys.
  const int s = y.word().back();
  Element ys = mul(y, s);
  if (right_descent(x, s)) return bruhat_leq(mul(x, s), ys);
  return bruhat_leq(x, ys);
}

std::vector<Element> Group::interval(const Element& y) const {
  // Subword property: z <= y iff z is a product of a subword of any reduced
  // word of y. Walk the word once, maintaining the closure.
  std::set<Element> seen;
  seen.insert(id());
  for (int s : y.word()) {
    std::set<Element> next = seen;
    for (const Element& z : seen) next.insert(mul(z, s));
    seen.swap(next);
  }
  return std::vector<Element>(seen.begin(), seen.end());
}

std::vector<std::vector<int>> Group::reduced_words(const Element& w) const {
  if (w.is_id()) return {{}};
  std::vector<std::vector<int>> out;
  for (int s = 0; s < real_.rank; ++s) {
    if (!left_descent(w, s)) continue;
    for (auto& tail : reduced_words(mul(s, w))) {
      tail.insert(tail.begin(), s);
      out.push_back(std::move(tail));
    }
  }
  return out;
}

std::vector<Element> Group::covers(const Element& w) const {
  // Every cover w < v arises by inserting one letter into some reduced word
  // of w (delete one letter from a reduced word of v to land on w).
  std::set<Element> out;
  const int l = w.length();
  for (const auto& word : reduced_words(w)) {
    for (size_t pos = 0; pos <= word.size(); ++pos) {
      for (int s = 0; s < real_.rank; ++s) {
        std::vector<int> cand = word;
        cand.insert(cand.begin() + pos, s);
        Element v = from_word(cand);
        if (v.length() == l + 1) out.insert(v);
      }
    }
  }
  return std::vector<Element>(out.begin(), out.end());
}

std::vector<Element> Group::cocovers(const Element& w) const {
  // Dually, every lower cover is a one-letter deletion from any fixed
  // reduced word of w.
  std::set<Element> out;
  const auto& word = w.word();
  for (size_t pos = 0; pos < word.size(); ++pos) {
    std::vector<int> cand = word;
    cand.erase(cand.begin() + pos);
    Element v = from_word(cand);
    if (v.length() == w.length() - 1) out.insert(v);
  }
  return std::vector<Element>(out.begin(), out.end());
}

bool Group::is_reflection(const Element& t) const {
  if (t.is_id()) return false;
  if (t.length() == 1) return true;
  // A reflection of length > 1 always shrinks by 2 under conjugation by a
  // suitable generator, and conjugation preserves being a reflection.
  for (int s = 0; s < real_.rank; ++s) {
    Element c = mul(mul(s, t), s);
    if (c.length() == t.length() - 2) return is_reflection(c);
  }
  return false;
}

Poly Group::reflection_root(const Element& t) const {
  if (!is_reflection(t)) fail("Unsupported", "element is not a reflection");
  if (t.length() == 1) return root(t.word()[0]);
  for (int s = 0; s < real_.rank; ++s) {
    Element c = mul(mul(s, t), s);
    if (c.length() == t.length() - 2) return act(gen(s), reflection_root(c));
  }
  fail("Unsupported", "reflection failed to shrink");  // unreachable
}

QVec Group::reflection_coroot(const Element& t) const {
  if (!is_reflection(t)) fail("Unsupported", "element is not a reflection");
  if (t.length() == 1) return coroot(t.word()[0]);
  for (int s = 0; s < real_.rank; ++s) {
    Element c = mul(mul(s, t), s);
    if (c.length() == t.length() - 2) {
      // <w(alpha^vee), l> = <alpha^vee, w^{-1} l>: as a row, right-multiply
      // by the matrix of w^{-1} = s.
      QVec row = reflection_coroot(c);
      QVec out = QVec::Zero(real_.dim);
      for (int j = 0; j < real_.dim; ++j)
        for (int i = 0; i < real_.dim; ++i) out(j) += row(i) * gen_user_[s](i, j);
      return out;
    }
  }
  fail("Unsupported", "reflection failed to shrink");  // unreachable
}

std::vector<Poly> Group::prefix_roots(const std::vector<int>& word) const {
  std::vector<Poly> out;
  Element pre = id();
  for (int s : word) {
    out.push_back(act(pre, root(s)));
    pre = mul(pre, s);
  }
  return out;
}

Poly Group::inversion_product(const Element& w) const {
  Poly p = Poly::constant(real_.dim, 1);
  for (const Poly& beta : prefix_roots(w.word())) p = p * beta;
  return p;
}

std::vector<std::vector<int>> Group::subexpressions(
    const std::vector<int>& word, const Element& target) const {
  std::vector<std::vector<int>> out;
  std::vector<int> bits(word.size(), 0);
  // DFS over prefixes, carrying the partial product; bit 0 of the word is
  // the most significant, so the natural recursion emits increasing order
  // with 0 before 1 at each position.
  std::function<void(size_t, const Element&)> go = [&](size_t i, const Element& cur) {
    if (i == word.size()) {
      if (cur == target) out.push_back(bits);
      return;
    }
    bits[i] = 0;
    go(i + 1, cur);
    bits[i] = 1;
    go(i + 1, mul(cur, word[i]));
    bits[i] = 0;
  };
  go(0, id());
  return out;
}

std::vector<int> Group::canonical_subexpression(const Element& target,
                                                const std::vector<int>& word) const {
  std::vector<int> bits(word.size(), 0);
  Element z = target;
  for (int i = static_cast<int>(word.size()) - 1; i >= 0; --i) {
    if (right_descent(z, word[i])) {
      bits[i] = 1;
      z = mul(z, word[i]);
    }
  }
  if (!z.is_id())
    fail("NotASubword", "greedy subexpression for " + element_str(target) +
                            " inside " + word_str(word) + " does not close");
  return bits;
}

std::string Group::word_str(const std::vector<int>& word) const {
  if (word.empty()) return "e";
  std::string out;
  for (size_t i = 0; i < word.size(); ++i) {
    if (i && real_.labels[word[i]].size() > 1) out += ".";
    out += real_.labels[word[i]];
  }
  return out;
}

std::string Group::element_str(const Element& w) const { return word_str(w.word()); }

std::vector<int> Group::parse_word(const std::string& text) const {
  std::vector<int> out;
  if (text == "e" || text.empty()) return out;
  // Single-letter labels may be concatenated; multi-letter labels must be
  // separated by '.' or whitespace.
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '.' || text[i] == ' ') {
      ++i;
      continue;
    }
    bool matched = false;
    // Longest label match first.
    int best = -1;
    size_t best_len = 0;
    for (int s = 0; s < real_.rank; ++s) {
      const std::string& lab = real_.labels[s];
      if (text.compare(i, lab.size(), lab) == 0 && lab.size() > best_len) {
        best = s;
        best_len = lab.size();
      }
    }
    if (best >= 0) {
      out.push_back(best);
      i += best_len;
      matched = true;
    }
    if (!matched) fail("Unsupported", "cannot parse word '" + text + "' at offset " + std::to_string(i));
  }
  return out;
}

}  // namespace gkm
