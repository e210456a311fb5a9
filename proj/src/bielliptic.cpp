#include "chabauty/bielliptic.hpp"

#include <sstream>

namespace chabauty {

BiellipticModel BiellipticModel::from(const HyperellipticModel& model) {
  if (model.degree() != 6 || !model.is_even())
    throw Error(ErrorKind::InvalidModel, "bielliptic model must be an even sextic");
  const RatPoly& g = model.g();
  if (g[0] == 0) throw Error(ErrorKind::InvalidModel, "constant coefficient must be nonzero");
  return {g[6], g[4], g[2], g[0]};
}

HyperellipticModel BiellipticModel::model() const { return HyperellipticModel(RatPoly{c0, 0, c1, 0, c2, 0, c3}); }

std::pair<EllipticQuotient, EllipticQuotient> quotient_curves(const BiellipticModel& m) {
  if (m.c0 == 0) throw Error(ErrorKind::InvalidModel, "f2 needs a nonzero constant coefficient");
  auto [a, b] = quotient_coefficients<mpq_class>(m.c3, m.c2, m.c1, m.c0, mpq_class(1));
  EllipticQuotient q1{1, HyperellipticModel(RatPoly(a.begin(), a.end())), "(x,y) -> (x^2, y)"};
  std::string c0 = m.c0.get_str();
  EllipticQuotient q2{2, HyperellipticModel(RatPoly(b.begin(), b.end())),
                      "(x,y) -> (" + c0 + "/x^2, " + c0 + "*y/x^3)"};
  return {q1, q2};
}

static void check_which(int which) {
  if (which != 1 && which != 2) throw Error(ErrorKind::InvalidInput, "quotient index must be 1 or 2");
}

RationalPoint push_point(const BiellipticModel& m, int which, const RationalPoint& pt) {
  check_which(which);
  if (pt.infinity) {
    if (which == 1) return RationalPoint::at_infinity();
    mpq_class l;
    if (!rational_sqrt(m.c3, l)) throw Error(ErrorKind::InvalidInput, "no rational points at infinity");
    return RationalPoint{0, m.c0 * l * pt.sign};
  }
  if (which == 1) return RationalPoint{pt.x * pt.x, pt.y};
  if (pt.x == 0) return RationalPoint::at_infinity();
  mpq_class x3 = pt.x * pt.x * pt.x;
  return RationalPoint{m.c0 / (pt.x * pt.x), m.c0 * pt.y / x3};
}

LocalPoint push_point(const BiellipticModel& m, int which, const LocalPoint& pt) {
  check_which(which);
  long p = pt.x.prime();
  if (pt.infinity) {
    if (which == 1) {
      PadicNumber z = PadicNumber::exact_zero(p);
      return {z, z, true};
    }
    PadicNumber u = PadicNumber::exact_zero(p);
    return {u, pt.y * m.c0, false};
  }
  if (which == 1) return {pt.x * pt.x, pt.y, false};
  if (pt.x.is_zero()) {
    PadicNumber z = PadicNumber::exact_zero(p);
    return {z, z, true};
  }
  PadicNumber inv = pt.x.inverse();
  PadicNumber inv2 = inv * inv;
  return {inv2 * m.c0, pt.y * inv2 * inv * m.c0, false};
}

static QuadElement q(const mpq_class& a, long d) { return QuadElement::rational(a, d); }

QuadPoint push_point(const BiellipticModel& m, int which, const QuadPoint& pt) {
  check_which(which);
  long d = pt.x.d();
  if (pt.infinity) {
    if (which == 1) return QuadPoint{q(0, d), q(0, d), true, 1};
    QuadElement l;
    if (!quad_sqrt(q(m.c3, d), l)) throw Error(ErrorKind::InvalidInput, "no points at infinity over this field");
    return QuadPoint{q(0, d), l * q(m.c0 * pt.sign, d), false, 1};
  }
  if (which == 1) return QuadPoint{pt.x * pt.x, pt.y, false, 1};
  if (pt.x.is_zero()) return QuadPoint{q(0, d), q(0, d), true, 1};
  QuadElement x2 = pt.x * pt.x;
  return QuadPoint{q(m.c0, d) / x2, q(m.c0, d) * pt.y / (x2 * pt.x), false, 1};
}

static std::string strip(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

QuadPoint QuadPoint::parse(const std::string& text, long d) {
  std::string s = strip(text);
  if (s == "inf" || s == "inf+" || s == "inf-") return QuadPoint{QuadElement::rational(0, d), QuadElement::rational(0, d), true,
                                                                 s == "inf-" ? -1 : 1};
  if (s.size() < 5 || s.front() != '(' || s.back() != ')')
    throw Error(ErrorKind::InvalidInput, "point must look like (x,y): " + text);
  std::string body = s.substr(1, s.size() - 2);
  auto comma = body.find(',');
  if (comma == std::string::npos || body.find(',', comma + 1) != std::string::npos)
    throw Error(ErrorKind::InvalidInput, "point must have two coordinates: " + text);
  return QuadPoint{QuadElement::parse(body.substr(0, comma), d), QuadElement::parse(body.substr(comma + 1), d), false, 1};
}

std::string QuadPoint::to_string() const {
  if (infinity) return sign > 0 ? "inf" : "inf-";
  return "(" + x.to_string() + "," + y.to_string() + ")";
}

bool QuadPoint::operator==(const QuadPoint& o) const {
  if (infinity || o.infinity) return infinity == o.infinity && sign == o.sign;
  return x == o.x && y == o.y;
}

bool on_curve(const HyperellipticModel& model, const QuadPoint& pt) {
  long d = pt.x.d();
  if (pt.infinity) {
    if (model.odd_degree()) return true;
    QuadElement l;
    return quad_sqrt(QuadElement::rational(model.lead(), d), l);
  }
  return pt.y * pt.y == model.eval(pt.x);
}

PullbackIdentities check_pullback_identities() {
  const std::vector<std::string> vars{"x", "c3", "c2", "c1", "c0"};
  auto V = [&](const std::string& n, int e = 1) { return SymPoly::variable(vars, n, e); };
  SymPoly one(vars, 1);
  SymPoly x = V("x"), c3 = V("c3"), c2 = V("c2"), c1 = V("c1"), c0 = V("c0");
  SymPoly g = c3 * x.pow(6) + c2 * x.pow(4) + c1 * x.pow(2) + c0;
  auto [k1, k2] = quotient_coefficients<SymPoly>(c3, c2, c1, c0, one);
  auto cubic = [&](const std::array<SymPoly, 4>& k, const SymPoly& u) { return k[0] + k[1] * u + k[2] * u.pow(2) + k[3] * u.pow(3); };

  PullbackIdentities r;
  // f1: u = x^2, v = y, so v^2 = g(x).
  SymPoly u1 = x.pow(2);
  r.f1_on_curve = g == cubic(k1, u1);
  // f2: u = c0 x^-2, v = c0 y x^-3, so v^2 = c0^2 g(x) x^-6.
  SymPoly u2 = c0 * V("x", -2);
  r.f2_on_curve = c0.pow(2) * g * V("x", -6) == cubic(k2, u2);
  // du/(2v) = (du/dx) dx / (2 a y) when v = a y; compare with the multiple of dx/y.
  // f1: a = 1, du/dx = 2x, expect x dx/y, i.e. du/dx / (2a) == x.
  r.f1_differential = u1.derivative("x") * mpq_class(1, 2) == x;
  // f2: a = c0 x^-3, expect -dx/y, i.e. du/dx == -2a.
  r.f2_differential = u2.derivative("x") == -(c0 * V("x", -3) * mpq_class(2));

  auto show = [&](const std::array<SymPoly, 4>& k) {
    std::string s = "v^2 = ";
    const char* mono[] = {"", "*u", "*u^2", "*u^3"};
    for (int i = 3; i >= 0; --i) s += "(" + k[i].to_string() + ")" + mono[i] + (i ? " + " : "");
    return s;
  };
  r.c1_generic = show(k1);
  r.c2_generic = show(k2);
  return r;
}

PadicNumber alpha_coefficient(const PadicNumber& h, const PadicNumber& logval, int degree) {
  if (degree <= 0) throw Error(ErrorKind::InvalidInput, "degree must be positive");
  if (logval.is_zero()) throw Error(ErrorKind::DivisionByZero, "logarithm is zero to the working precision");
  return h / (logval * logval * mpq_class(degree));
}

std::vector<PointCheck> verify_points_over_field(const HyperellipticModel& model, long d,
                                                 const std::vector<std::string>& points) {
  if (d == 0 || d == 1 || !is_squarefree(d)) throw Error(ErrorKind::InvalidInput, "d must be squarefree and not 0 or 1");
  std::vector<PointCheck> out;
  for (const auto& s : points) {
    QuadPoint pt = QuadPoint::parse(s, d);
    out.push_back({pt, on_curve(model, pt)});
  }
  return out;
}

}  // namespace chabauty
