#include "msym/scalar.hpp"

#include <algorithm>
#include <numeric>

namespace msym {

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  unsigned da = std::accumulate(a.begin(), a.end(), 0u);
  unsigned db = std::accumulate(b.begin(), b.end(), 0u);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Scalar Scalar::constant(const Vars& vars, const Rational& c) {
  Scalar s(vars);
  if (!msym::is_zero(c)) s.terms_[Monomial(vars.size(), 0)] = c;
  return s;
}

Scalar Scalar::variable(const Vars& vars, int index) {
  if (index < 0 || static_cast<std::size_t>(index) >= vars.size())
    throw usage_error("variable index out of range");
  Scalar s(vars);
  Monomial m(vars.size(), 0);
  m[index] = 1;
  s.terms_[m] = rat(1);
  return s;
}

Scalar Scalar::variable(const Vars& vars, const std::string& name) {
  int idx = vars.index_of(name);
  if (idx < 0) throw usage_error("unknown variable: " + name);
  return variable(vars, idx);
}

bool Scalar::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 &&
         std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                     [](unsigned e) { return e == 0; });
}

Rational Scalar::constant_value() const {
  auto it = terms_.find(Monomial(vars_.size(), 0));
  return it == terms_.end() ? rat(0) : it->second;
}

int Scalar::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_)
    d = std::max(d, static_cast<int>(std::accumulate(m.begin(), m.end(), 0u)));
  return d;
}

bool Scalar::depends_on(int var_index) const {
  for (const auto& [m, c] : terms_)
    if (m[var_index] != 0) return true;
  return false;
}

void Scalar::add_term(const Monomial& m, const Rational& c) {
  if (m.size() != vars_.size()) throw usage_error("monomial length mismatch");
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (!msym::is_zero(c)) terms_.emplace(m, c);
  } else {
    it->second += c;
    if (msym::is_zero(it->second)) terms_.erase(it);
  }
}

void Scalar::check_same(const Scalar& o) const {
  if (vars_ != o.vars_) throw usage_error("scalar arithmetic across different charts");
}

Scalar Scalar::operator-() const {
  Scalar r(vars_);
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  a.check_same(b);
  Scalar r(a.vars_);
  Monomial m(a.vars_.size());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

Scalar operator*(const Rational& c, const Scalar& a) {
  Scalar r(a.vars_);
  if (msym::is_zero(c)) return r;
  for (const auto& [m, ca] : a.terms_) r.terms_[m] = c * ca;
  return r;
}

Scalar Scalar::partial(int var_index) const {
  if (var_index < 0 || static_cast<std::size_t>(var_index) >= vars_.size())
    throw usage_error("unknown coordinate in partial derivative");
  Scalar r(vars_);
  for (const auto& [m, c] : terms_) {
    if (m[var_index] == 0) continue;
    Monomial d = m;
    unsigned e = d[var_index]--;
    r.add_term(d, rat(e) * c);
  }
  return r;
}

Scalar Scalar::partial(const std::string& var_name) const {
  int idx = vars_.index_of(var_name);
  if (idx < 0) throw usage_error("unknown coordinate: " + var_name);
  return partial(idx);
}

Rational Scalar::eval(const std::vector<Rational>& point) const {
  if (point.size() != vars_.size())
    throw usage_error("evaluation point length mismatch");
  Rational acc = rat(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (unsigned e = 0; e < m[i]; ++e) t *= point[i];
    acc += t;
  }
  return acc;
}

Scalar Scalar::substitute(const Vars& target, const std::vector<Scalar>& images) const {
  if (images.size() != vars_.size())
    throw usage_error("substitution image count mismatch");
  Scalar acc(target);
  for (const auto& [m, c] : terms_) {
    Scalar t = Scalar::constant(target, c);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (unsigned e = 0; e < m[i]; ++e) t = t * images[i];
    acc += t;
  }
  return acc;
}

std::string Scalar::render() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = c;
    if (first) {
      if (sgn(a) < 0) {
        out += "-";
        a = -a;
      }
    } else {
      out += sgn(a) < 0 ? " - " : " + ";
      if (sgn(a) < 0) a = -a;
    }
    first = false;
    bool unit_mono =
        std::all_of(m.begin(), m.end(), [](unsigned e) { return e == 0; });
    bool wrote = false;
    if (a != 1 || unit_mono) {
      out += to_string(a);
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (unsigned e = 0; e < m[i]; ++e) {
        if (wrote) out += "*";
        out += vars_.name(i);
        wrote = true;
      }
    }
  }
  return out;
}

Scalar rename_vars(const Scalar& s, const Vars& target) {
  std::vector<Scalar> images;
  for (std::size_t i = 0; i < s.vars().size(); ++i) {
    int idx = target.index_of(s.vars().name(i));
    if (idx < 0) {
      if (s.depends_on(static_cast<int>(i)))
        throw usage_error("variable missing from target list: " + s.vars().name(i));
      images.push_back(Scalar::zero(target));
    } else {
      images.push_back(Scalar::variable(target, idx));
    }
  }
  return s.substitute(target, images);
}

}  // namespace msym
