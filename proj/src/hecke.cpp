#include "gkm/hecke.hpp"

#include <sstream>

#include "gkm/error.hpp"

namespace gkm {

namespace {
void laurent_add_term(Laurent& a, int k, long long c) {
  if (c == 0) return;
  auto [it, fresh] = a.emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) a.erase(it);
  }
}
}  // namespace

Laurent laurent_add(const Laurent& a, const Laurent& b) {
  Laurent out = a;
  for (const auto& [k, c] : b) laurent_add_term(out, k, c);
  return out;
}

Laurent laurent_sub(const Laurent& a, const Laurent& b) {
  Laurent out = a;
  for (const auto& [k, c] : b) laurent_add_term(out, k, -c);
  return out;
}

Laurent laurent_mul(const Laurent& a, const Laurent& b) {
  Laurent out;
  for (const auto& [k, c] : a)
    for (const auto& [l, d] : b) laurent_add_term(out, k + l, c * d);
  return out;
}

Laurent laurent_bar(const Laurent& a) {
  Laurent out;
  for (const auto& [k, c] : a) out.emplace(-k, c);
  return out;
}

long long laurent_coeff(const Laurent& a, int k) {
  auto it = a.find(k);
  return it == a.end() ? 0 : it->second;
}

std::string laurent_str(const Laurent& a) {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : a) {
    long long mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || k == 0) os << mag;
    if (k != 0) {
      if (mag != 1) os << "*";
      os << "v";
      if (k != 1) os << "^" << k;
    }
  }
  return os.str();
}

Hecke::Elt Hecke::h(const Element& w) const {
  Elt out;
  out[w][0] = 1;
  return out;
}

Hecke::Elt Hecke::scale(const Elt& a, const Laurent& c) const {
  Elt out;
  for (const auto& [w, f] : a) {
    Laurent p = laurent_mul(f, c);
    if (!p.empty()) out.emplace(w, std::move(p));
  }
  return out;
}

Hecke::Elt Hecke::add(const Elt& a, const Elt& b) {
  Elt out = a;
  for (const auto& [w, f] : b) {
    Laurent s = laurent_add(out[w], f);
    if (s.empty())
      out.erase(w);
    else
      out[w] = std::move(s);
  }
  return out;
}

Hecke::Elt Hecke::sub(const Elt& a, const Elt& b) {
  Elt out = a;
  for (const auto& [w, f] : b) {
    Laurent s = laurent_sub(out[w], f);
    if (s.empty())
      out.erase(w);
    else
      out[w] = std::move(s);
  }
  return out;
}

Hecke::Elt Hecke::mul_gen(const Elt& a, int s) const {
  Elt out;
  Laurent shrink;  // v^{-1} - v
  shrink[-1] = 1;
  shrink[1] = -1;
  for (const auto& [w, f] : a) {
    Element ws = g_.mul(w, s);
    if (ws.length() > w.length()) {
      out = add(out, scale(h(ws), f));
    } else {
      Elt term = scale(h(ws), f);
      term = add(term, scale(h(w), laurent_mul(f, shrink)));
      out = add(out, term);
    }
  }
  return out;
}

Hecke::Elt Hecke::mul(const Elt& a, const Elt& b) const {
  Elt out;
  for (const auto& [y, g] : b) {
    // a * (g H_y): multiply a by the generators of y's word, then scale.
    Elt cur = a;
    for (int s : y.word()) cur = mul_gen(cur, s);
    out = add(out, scale(cur, g));
  }
  return out;
}

Hecke::Elt Hecke::bar(const Elt& a) const {
  Elt out;
  Laurent stretch;  // v - v^{-1}
  stretch[1] = 1;
  stretch[-1] = -1;
  for (const auto& [w, f] : a) {
    // bar(H_w) = (H_{w^{-1}})^{-1} = prod over the word of (H_s + (v - v^{-1})).
    Elt cur = h(g_.id());
    for (int s : w.word()) {
      Elt next = mul_gen(cur, s);
      next = add(next, scale(cur, stretch));
      cur = std::move(next);
    }
    out = add(out, scale(cur, laurent_bar(f)));
  }
  return out;
}

const Hecke::Elt& Hecke::canonical(const Element& w) const {
  auto it = canon_cache_.find(w);
  if (it != canon_cache_.end()) return it->second;
  Elt val;
  if (w.is_id()) {
    val = h(w);
  } else {
    const int s = w.word().back();
    Element w1 = g_.mul(w, s);  // w = w1 s with w1 shorter
    Elt prod = mul_gen(canonical(w1), s);
    Laurent v1;
    v1[1] = 1;
    prod = add(prod, scale(canonical(w1), v1));  // b_{w1} (H_s + v)
    // Subtract mu(x, w1) b_x over x with xs < x.
    val = prod;
    // Iterate from the longest corrections downward; collect first to keep
    // the cache stable during recursion.
    std::vector<std::pair<Element, long long>> corr;
    for (const auto& [x, f] : canonical(w1)) {
      if (x == w1) continue;
      long long m = laurent_coeff(f, 1);
      if (m == 0) continue;
      if (g_.mul(x, s).length() > x.length()) continue;
      corr.emplace_back(x, m);
    }
    for (const auto& [x, m] : corr) {
      Laurent c;
      c[0] = m;
      val = sub(val, scale(canonical(x), c));
    }
  }
  return canon_cache_.emplace(w, std::move(val)).first->second;
}

long long Hecke::mu(const Element& x, const Element& w) const {
  const Elt& b = canonical(w);
  auto it = b.find(x);
  return it == b.end() ? 0 : laurent_coeff(it->second, 1);
}

Hecke::Elt Hecke::bs_character(const std::vector<int>& word) const {
  Elt cur = h(g_.id());
  Laurent v1;
  v1[1] = 1;
  for (int s : word) {
    Elt next = mul_gen(cur, s);
    next = add(next, scale(cur, v1));
    cur = std::move(next);
  }
  return cur;
}

Laurent Hecke::pairing(const Elt& a, const Elt& b) const {
  Laurent out;
  for (const auto& [w, f] : a) {
    auto it = b.find(w);
    if (it == b.end()) continue;
    out = laurent_add(out, laurent_mul(f, it->second));
  }
  return out;
}

std::string Hecke::str(const Elt& a) const {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, f] : a) {
    if (!first) os << " + ";
    first = false;
    os << "(" << laurent_str(f) << ")H[" << g_.element_str(w) << "]";
  }
  return os.str();
}

}  // namespace gkm
