#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace chabauty {

/// Laurent polynomial in a fixed list of named variables with rational
/// coefficients. Used for identity checks of the quotient formulas.
class SymPoly {
 public:
  using Monomial = std::vector<int>;

  SymPoly() = default;
  explicit SymPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}
  SymPoly(std::vector<std::string> vars, const mpq_class& c);

  static SymPoly variable(const std::vector<std::string>& vars, const std::string& name, int power = 1);

  const std::vector<std::string>& variables() const { return vars_; }
  const std::map<Monomial, mpq_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  SymPoly operator+(const SymPoly& o) const;
  SymPoly operator-(const SymPoly& o) const;
  SymPoly operator-() const;
  SymPoly operator*(const SymPoly& o) const;
  SymPoly operator*(const mpq_class& c) const;
  /// Division by a single monomial term.
  SymPoly operator/(const SymPoly& monomial) const;
  SymPoly pow(unsigned e) const;
  SymPoly derivative(const std::string& var) const;

  bool operator==(const SymPoly& o) const { return (*this - o).is_zero(); }
  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const mpq_class& c);
  std::size_t index(const std::string& var) const;

  std::vector<std::string> vars_;
  std::map<Monomial, mpq_class> terms_;
};

}  // namespace chabauty
