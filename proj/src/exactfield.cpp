#include "chabauty/exactfield.hpp"

#include <cctype>
#include <cstdlib>

namespace chabauty {

bool is_squarefree(long n) {
  if (n == 0) return false;
  unsigned long m = static_cast<unsigned long>(std::labs(n));
  for (unsigned long q = 2; q * q <= m; ++q)
    if (m % (q * q) == 0) return false;
  return true;
}

QuadElement::QuadElement(mpq_class a, mpq_class b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  a_.canonicalize();
  b_.canonicalize();
  if (d_ == 1 || !is_squarefree(d_))
    throw Error(ErrorKind::InvalidInput, "quadratic field parameter must be squarefree and not 0 or 1");
}

long QuadElement::common_d(const QuadElement& o) const {
  if (d_ == o.d_) return d_;
  if (o.is_rational()) return d_;
  if (is_rational()) return o.d_;
  throw Error(ErrorKind::FieldMismatch,
              "elements of Q(sqrt(" + std::to_string(d_) + ")) and Q(sqrt(" + std::to_string(o.d_) + "))");
}

QuadElement QuadElement::operator+(const QuadElement& o) const {
  return QuadElement(a_ + o.a_, b_ + o.b_, common_d(o));
}

QuadElement QuadElement::operator-(const QuadElement& o) const {
  return QuadElement(a_ - o.a_, b_ - o.b_, common_d(o));
}

QuadElement QuadElement::operator*(const QuadElement& o) const {
  long d = common_d(o);
  return QuadElement(a_ * o.a_ + d * b_ * o.b_, a_ * o.b_ + b_ * o.a_, d);
}

QuadElement QuadElement::inverse() const {
  mpq_class n = norm();
  if (n == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero in a quadratic field");
  return QuadElement(a_ / n, -b_ / n, d_);
}

QuadElement QuadElement::operator/(const QuadElement& o) const {
  common_d(o);
  return *this * o.inverse();
}

QuadElement QuadElement::pow(unsigned e) const {
  QuadElement r = rational(1, d_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool QuadElement::operator==(const QuadElement& o) const {
  if (d_ != o.d_ && !(is_rational() && o.is_rational())) {
    if (!is_rational() || !o.is_rational()) return false;
  }
  return a_ == o.a_ && b_ == o.b_;
}

bool QuadElement::operator<(const QuadElement& o) const {
  if (a_ != o.a_) return a_ < o.a_;
  return b_ < o.b_;
}

std::string QuadElement::to_string() const {
  if (b_ == 0) return a_.get_str();
  std::string s = d_ == -1 ? "i" : "s";
  std::string out;
  if (a_ != 0) out = a_.get_str();
  mpq_class b = b_;
  if (b < 0) {
    out += "-";
    b = -b;
  } else if (!out.empty()) {
    out += "+";
  }
  if (b != 1) out += b.get_str() + "*";
  return out + s;
}

namespace {

mpq_class parse_rational(const std::string& t) {
  if (t.empty()) throw Error(ErrorKind::InvalidInput, "empty rational");
  for (char c : t)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
      throw Error(ErrorKind::InvalidInput, "bad rational '" + t + "'");
  mpq_class q;
  try {
    std::string u = t[0] == '+' ? t.substr(1) : t;
    q = mpq_class(u, 10);
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::InvalidInput, "bad rational '" + t + "'");
  }
  if (q.get_den() == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + t + "'");
  q.canonicalize();
  return q;
}

}  // namespace

QuadElement QuadElement::parse(const std::string& text, long d) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw Error(ErrorKind::InvalidInput, "empty field element");
  // Split into signed terms.
  std::vector<std::string> terms;
  std::string cur;
  for (std::size_t i = 0; i < t.size(); ++i) {
    char c = t[i];
    if ((c == '+' || c == '-') && i > 0 && t[i - 1] != '/' && t[i - 1] != '*') {
      terms.push_back(cur);
      cur.clear();
    }
    cur += c;
  }
  terms.push_back(cur);
  mpq_class a = 0, b = 0;
  for (std::string term : terms) {
    if (term.empty() || term == "+" || term == "-") throw Error(ErrorKind::InvalidInput, "bad element '" + text + "'");
    char last = term.back();
    bool radical = last == 's' || (last == 'i' && d == -1);
    if (last == 'i' && d != -1) throw Error(ErrorKind::InvalidInput, "'i' used outside Q(i)");
    if (!radical) {
      a += parse_rational(term);
      continue;
    }
    term.pop_back();
    if (!term.empty() && term.back() == '*') term.pop_back();
    mpq_class coef;
    if (term.empty() || term == "+") coef = 1;
    else if (term == "-") coef = -1;
    else coef = parse_rational(term);
    b += coef;
  }
  return QuadElement(a, b, d);
}

bool rational_sqrt(const mpq_class& x, mpq_class& root) {
  if (x < 0) return false;
  mpz_class n = x.get_num(), dd = x.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(dd.get_mpz_t())) return false;
  mpz_class rn = sqrt(n), rd = sqrt(dd);
  root = mpq_class(rn, rd);
  root.canonicalize();
  return true;
}

bool quad_sqrt(const QuadElement& x, QuadElement& root) {
  const long d = x.d();
  // (u + v s)^2 = u^2 + d v^2 + 2uv s.
  if (x.is_rational()) {
    mpq_class r;
    if (rational_sqrt(x.a(), r)) {
      root = QuadElement(r, 0, d);
      return true;
    }
    if (rational_sqrt(x.a() / d, r)) {
      root = QuadElement(0, r, d);
      return true;
    }
    return false;
  }
  mpq_class n = x.norm(), m;
  if (!rational_sqrt(n, m)) return false;
  for (int sgn : {1, -1}) {
    mpq_class u2 = (x.a() + sgn * m) / 2, u;
    if (u2 == 0 || !rational_sqrt(u2, u)) continue;
    mpq_class v = x.b() / (2 * u);
    root = QuadElement(u, v, d);
    if (root * root == x) return true;
  }
  return false;
}

}  // namespace chabauty
