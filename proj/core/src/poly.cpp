#include <dnb/poly.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <sstream>

namespace dnb {

int grlex_compare(const monomial& a, const monomial& b) {
  unsigned da = 0, db = 0;
  for (unsigned e : a) da += e;
  for (unsigned e : b) db += e;
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

namespace {

struct grlex_greater {
  bool operator()(const monomial& a, const monomial& b) const {
    return grlex_compare(a, b) > 0;
  }
};

} // namespace

poly poly::constant(const varset& vars, const rational& c) {
  return single(vars, monomial(vars.size(), 0), c);
}

poly poly::variable(const varset& vars, std::size_t index) {
  monomial m(vars.size(), 0);
  m[index] = 1;
  return single(vars, std::move(m), 1);
}

poly poly::single(const varset& vars, monomial m, const rational& c) {
  if (c == 0) return zero(vars);
  std::vector<term> ts;
  ts.push_back(term{std::move(m), c});
  return poly(vars, std::move(ts));
}

poly poly::from_terms(const varset& vars, std::vector<term> ts) {
  std::map<monomial, rational, grlex_greater> acc;
  for (term& t : ts) acc[std::move(t.mono)] += t.coeff;
  std::vector<term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) out.push_back(term{m, c});
  return poly(vars, std::move(out));
}

bool poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (unsigned e : terms_[0].mono)
    if (e) return false;
  return true;
}

bool poly::is_one() const { return is_constant() && !terms_.empty() && terms_[0].coeff == 1; }

rational poly::constant_value() const { return terms_.empty() ? rational(0) : terms_[0].coeff; }

unsigned poly::total_degree() const {
  unsigned d = 0;
  for (const term& t : terms_) {
    unsigned s = 0;
    for (unsigned e : t.mono) s += e;
    d = std::max(d, s);
  }
  return d;
}

unsigned poly::degree_in(std::size_t v) const {
  unsigned d = 0;
  for (const term& t : terms_) d = std::max(d, t.mono[v]);
  return d;
}

poly poly::operator-() const {
  std::vector<term> ts = terms_;
  for (term& t : ts) t.coeff = -t.coeff;
  return poly(vars_, std::move(ts));
}

poly poly::operator+(const poly& o) const {
  // Merge of two descending-sorted term lists.
  std::vector<term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = grlex_compare(terms_[i].mono, o.terms_[j].mono);
    if (c > 0) {
      out.push_back(terms_[i++]);
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      rational s = terms_[i].coeff + o.terms_[j].coeff;
      if (s != 0) out.push_back(term{terms_[i].mono, std::move(s)});
      ++i, ++j;
    }
  }
  for (; i < terms_.size(); ++i) out.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) out.push_back(o.terms_[j]);
  return poly(vars_, std::move(out));
}

poly poly::operator-(const poly& o) const { return *this + (-o); }

poly poly::operator*(const poly& o) const {
  if (is_zero() || o.is_zero()) return zero(vars_);
  const poly& small = terms_.size() <= o.terms_.size() ? *this : o;
  const poly& big = terms_.size() <= o.terms_.size() ? o : *this;
  std::map<monomial, rational, grlex_greater> acc;
  monomial m(vars_.size());
  for (const term& s : small.terms_) {
    for (const term& t : big.terms_) {
      for (std::size_t v = 0; v < m.size(); ++v) m[v] = s.mono[v] + t.mono[v];
      acc[m] += s.coeff * t.coeff;
    }
  }
  std::vector<term> out;
  out.reserve(acc.size());
  for (auto& [mm, c] : acc)
    if (c != 0) out.push_back(term{mm, c});
  return poly(vars_, std::move(out));
}

poly poly::scaled(const rational& c) const {
  if (c == 0) return zero(vars_);
  std::vector<term> ts = terms_;
  for (term& t : ts) t.coeff *= c;
  return poly(vars_, std::move(ts));
}

poly poly::mul_single(const monomial& m, const rational& c) const {
  if (c == 0) return zero(vars_);
  std::vector<term> ts = terms_;
  for (term& t : ts) {
    for (std::size_t v = 0; v < m.size(); ++v) t.mono[v] += m[v];
    t.coeff *= c;
  }
  // Adding the same monomial to every term preserves graded-lex order.
  return poly(vars_, std::move(ts));
}

poly poly::pow(unsigned k) const {
  poly acc = constant(vars_, 1);
  poly base = *this;
  while (k) {
    if (k & 1) acc *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return acc;
}

poly poly::diff(std::size_t v) const {
  // Decrementing the same variable in every surviving term preserves order.
  std::vector<term> out;
  out.reserve(terms_.size());
  for (const term& t : terms_) {
    if (t.mono[v] == 0) continue;
    term d = t;
    d.coeff *= t.mono[v];
    --d.mono[v];
    out.push_back(std::move(d));
  }
  return poly(vars_, std::move(out));
}

std::pair<rational, poly> poly::rat_content_primitive() const {
  if (is_zero()) return {rational(0), *this};
  bigint l = 1;
  for (const term& t : terms_) l = lcm(l, denom(t.coeff));
  bigint g = 0;
  for (const term& t : terms_) g = gcd(g, numer(t.coeff) * (l / denom(t.coeff)));
  bool neg = terms_.front().coeff < 0;
  if (neg) g = -g;
  rational content{g, l};
  std::vector<term> ts = terms_;
  for (term& t : ts) t.coeff /= content;
  return {std::move(content), poly(vars_, std::move(ts))};
}

std::optional<poly> poly::divexact(const poly& a, const poly& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return a;
  std::vector<term> q;
  poly r = a;
  const term& lb = b.leading();
  while (!r.is_zero()) {
    const term& lr = r.leading();
    monomial qm(lr.mono.size());
    for (std::size_t v = 0; v < qm.size(); ++v) {
      if (lr.mono[v] < lb.mono[v]) return std::nullopt;
      qm[v] = lr.mono[v] - lb.mono[v];
    }
    rational qc = lr.coeff / lb.coeff;
    r -= b.mul_single(qm, qc);
    q.push_back(term{std::move(qm), std::move(qc)});
  }
  // Quotient leading monomials decrease along the loop, so q is sorted.
  return poly(a.vars_, std::move(q));
}

std::vector<poly> poly::coeffs_in(std::size_t v) const {
  std::vector<poly> out(degree_in(v) + 1, zero(vars_));
  std::vector<std::vector<term>> buckets(out.size());
  for (const term& t : terms_) {
    term s = t;
    unsigned k = s.mono[v];
    s.mono[v] = 0;
    buckets[k].push_back(std::move(s));
  }
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = from_terms(vars_, std::move(buckets[k]));
  return out;
}

poly poly::remap(const varset& target, const std::vector<int>& old_to_new) const {
  std::vector<term> ts;
  ts.reserve(terms_.size());
  for (const term& t : terms_) {
    monomial m(target.size(), 0);
    for (std::size_t v = 0; v < t.mono.size(); ++v) {
      if (t.mono[v] == 0) continue;
      if (old_to_new[v] < 0)
        throw engine_error("variable '" + vars_.name(v) + "' has no image under remap");
      m[static_cast<std::size_t>(old_to_new[v])] += t.mono[v];
    }
    ts.push_back(term{std::move(m), t.coeff});
  }
  return from_terms(target, std::move(ts));
}

bool poly::operator==(const poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

int poly::compare(const poly& a, const poly& b) {
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = grlex_compare(a.terms_[i].mono, b.terms_[i].mono);
    if (c != 0) return c;
    if (a.terms_[i].coeff != b.terms_[i].coeff)
      return a.terms_[i].coeff < b.terms_[i].coeff ? -1 : 1;
  }
  if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size() ? -1 : 1;
  return 0;
}

std::string poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const term& t : terms_) {
    rational c = t.coeff;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
      first = false;
    } else {
      if (c < 0) {
        os << " - ";
        c = -c;
      } else {
        os << " + ";
      }
    }
    bool any_var = false;
    for (unsigned e : t.mono)
      if (e) any_var = true;
    if (!any_var) {
      os << dnb::to_string(c);
      continue;
    }
    bool emitted = false;
    if (c != 1) {
      os << dnb::to_string(c);
      emitted = true;
    }
    for (std::size_t v = 0; v < t.mono.size(); ++v) {
      if (t.mono[v] == 0) continue;
      if (emitted) os << "*";
      os << vars_.name(v);
      if (t.mono[v] > 1) os << "^" << t.mono[v];
      emitted = true;
    }
  }
  return os.str();
}

namespace {

// Pseudo-remainder of a by b with respect to variable v, scaled by exactly
// lc_v(b)^(deg_v a - deg_v b + 1). Pre: deg_v a >= deg_v b, b uses v.
poly prem(const poly& a, const poly& b, std::size_t v) {
  unsigned db = b.degree_in(v);
  poly lb = b.coeffs_in(v)[db];
  poly r = a;
  int e = static_cast<int>(a.degree_in(v)) - static_cast<int>(db) + 1;
  while (!r.is_zero() && r.degree_in(v) >= db) {
    unsigned dr = r.degree_in(v);
    poly lr = r.coeffs_in(v)[dr];
    monomial shift(a.vars().size(), 0);
    shift[v] = dr - db;
    r = r * lb - (b * lr).mul_single(shift, 1);
    --e;
  }
  for (; e > 0; --e) r = r * lb;
  return r;
}

poly must_div(const poly& a, const poly& b, const char* where) {
  auto q = poly::divexact(a, b);
  if (!q) throw engine_error(std::string("inexact division in ") + where);
  return *q;
}

// Positive-leading primitive integer representative.
poly prim(const poly& p) { return p.rat_content_primitive().second; }

poly gcd_primitive(const poly& a, const poly& b);

// GCD of the dense v-coefficient list of p (its content w.r.t. v).
poly content_in(const poly& p, std::size_t v) {
  poly c = poly::zero(p.vars());
  for (const poly& q : p.coeffs_in(v)) {
    if (q.is_zero()) continue;
    c = c.is_zero() ? prim(q) : gcd_primitive(c, q);
    if (c.is_one()) break;
  }
  return c;
}

// Pre: a, b nonzero with integer content 1 and positive leading coefficient.
poly gcd_primitive(const poly& a, const poly& b) {
  if (a == b) return a;
  if (a.is_constant() || b.is_constant()) return poly::constant(a.vars(), 1);

  // Common pure-monomial factor, handled directly.
  const std::size_t nv = a.vars().size();
  monomial ma(nv, 0), mb(nv, 0), m(nv, 0);
  auto min_exps = [nv](const poly& p, monomial& out) {
    out.assign(nv, ~0u);
    for (const term& t : p.terms())
      for (std::size_t v = 0; v < nv; ++v) out[v] = std::min(out[v], t.mono[v]);
  };
  min_exps(a, ma);
  min_exps(b, mb);
  bool stripped = false;
  for (std::size_t v = 0; v < nv; ++v) {
    m[v] = std::min(ma[v], mb[v]);
    if (ma[v] || mb[v]) stripped = true;
  }
  if (stripped) {
    poly sa = poly::divexact(a, poly::single(a.vars(), ma, 1)).value();
    poly sb = poly::divexact(b, poly::single(b.vars(), mb, 1)).value();
    poly g = gcd_primitive(sa, sb);
    return g.mul_single(m, 1);
  }

  // Last variable used by either operand drives the recursion.
  std::size_t v = nv;
  for (std::size_t i = nv; i-- > 0;) {
    if (a.uses(i) || b.uses(i)) {
      v = i;
      break;
    }
  }
  if (v == nv) return poly::constant(a.vars(), 1); // both constants, both primitive

  if (!a.uses(v)) return gcd_primitive(a, content_in(b, v));
  if (!b.uses(v)) return gcd_primitive(content_in(a, v), b);

  poly ca = content_in(a, v);
  poly cb = content_in(b, v);
  poly c = gcd_primitive(ca, cb);
  poly f = must_div(a, ca, "content removal");
  poly g = must_div(b, cb, "content removal");
  if (f.degree_in(v) < g.degree_in(v)) std::swap(f, g);

  // Subresultant pseudo-remainder sequence on the v-primitive parts.
  poly one = poly::constant(a.vars(), 1);
  poly gg = one, hh = one;
  for (;;) {
    unsigned delta = f.degree_in(v) - g.degree_in(v);
    poly r = prem(f, g, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) return c; // v-primitive gcd is trivial
    poly divisor = gg * hh.pow(delta);
    f = g;
    g = must_div(r, divisor, "subresultant step");
    gg = f.coeffs_in(v)[f.degree_in(v)];
    if (delta == 1) {
      hh = gg;
    } else if (delta > 1) {
      hh = must_div(gg.pow(delta), hh.pow(delta - 1), "subresultant h update");
    }
  }
  poly pp = must_div(g, content_in(g, v), "primitive part");
  return prim(c * pp);
}

} // namespace

poly poly_gcd(const poly& a, const poly& b) {
  if (a.is_zero()) return prim(b);
  if (b.is_zero()) return prim(a);
  return gcd_primitive(prim(a), prim(b));
}

} // namespace dnb
