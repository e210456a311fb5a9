#include "chabauty/sympoly.hpp"

#include <algorithm>

#include "chabauty/errors.hpp"

namespace chabauty {

SymPoly::SymPoly(std::vector<std::string> vars, const mpq_class& c) : vars_(std::move(vars)) {
  if (c != 0) terms_[Monomial(vars_.size(), 0)] = c;
}

std::size_t SymPoly::index(const std::string& var) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) throw Error(ErrorKind::InvalidInput, "unknown variable " + var);
  return static_cast<std::size_t>(it - vars_.begin());
}

SymPoly SymPoly::variable(const std::vector<std::string>& vars, const std::string& name, int power) {
  SymPoly r(vars);
  Monomial m(vars.size(), 0);
  m[r.index(name)] = power;
  r.terms_[m] = 1;
  return r;
}

void SymPoly::add_term(const Monomial& m, const mpq_class& c) {
  if (c == 0) return;
  auto& slot = terms_[m];
  slot += c;
  if (slot == 0) terms_.erase(m);
}

SymPoly SymPoly::operator+(const SymPoly& o) const {
  SymPoly r = vars_.empty() ? o : *this;
  if (vars_.empty()) return r;
  if (!o.vars_.empty() && o.vars_ != vars_) throw Error(ErrorKind::InvalidInput, "variable lists differ");
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

SymPoly SymPoly::operator-() const {
  SymPoly r(vars_);
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

SymPoly SymPoly::operator-(const SymPoly& o) const { return *this + (-o); }

SymPoly SymPoly::operator*(const SymPoly& o) const {
  if (!o.vars_.empty() && !vars_.empty() && o.vars_ != vars_) throw Error(ErrorKind::InvalidInput, "variable lists differ");
  SymPoly r(vars_.empty() ? o.vars_ : vars_);
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      Monomial m(m1.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = m1[i] + m2[i];
      r.add_term(m, c1 * c2);
    }
  return r;
}

SymPoly SymPoly::operator*(const mpq_class& c) const {
  SymPoly r(vars_);
  for (const auto& [m, a] : terms_) r.add_term(m, a * c);
  return r;
}

SymPoly SymPoly::operator/(const SymPoly& mono) const {
  if (mono.terms_.size() != 1) throw Error(ErrorKind::InvalidInput, "division by a non-monomial");
  const auto& [m2, c2] = *mono.terms_.begin();
  SymPoly r(vars_);
  for (const auto& [m1, c1] : terms_) {
    Monomial m(m1.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = m1[i] - m2[i];
    r.add_term(m, c1 / c2);
  }
  return r;
}

SymPoly SymPoly::pow(unsigned e) const {
  SymPoly r(vars_, 1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

SymPoly SymPoly::derivative(const std::string& var) const {
  std::size_t k = index(var);
  SymPoly r(vars_);
  for (const auto& [m, c] : terms_) {
    if (m[k] == 0) continue;
    Monomial n = m;
    n[k] -= 1;
    r.add_term(n, c * m[k]);
  }
  return r;
}

std::string SymPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (m[i] != 1) mono += "^" + std::to_string(m[i]);
    }
    mpq_class a = abs(c);
    std::string term = mono.empty() ? a.get_str() : (a == 1 ? mono : a.get_str() + "*" + mono);
    if (out.empty()) out = (c < 0 ? "-" : "") + term;
    else out += (c < 0 ? " - " : " + ") + term;
  }
  return out;
}

}  // namespace chabauty
