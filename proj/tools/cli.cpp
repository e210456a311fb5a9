#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#include "chabauty/bielliptic.hpp"
#include "chabauty/brings.hpp"
#include "chabauty/chabauty.hpp"
#include "chabauty/ffield.hpp"
#include "chabauty/frobenius.hpp"

namespace chabauty::cli {

using nlohmann::json;

namespace {

constexpr int kExitOk = 0, kExitConfig = 2, kExitPrecision = 3, kExitDomain = 4;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string strip(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

mpq_class parse_rational(const std::string& text) {
  static const std::regex re(R"([+-]?\d+(/\d+)?)");
  std::string s = strip(text);
  if (!std::regex_match(s, re)) throw ConfigError("not an exact rational: '" + text + "'");
  if (s[0] == '+') s = s.substr(1);
  mpq_class q(s);
  if (q.get_den() == 0) throw ConfigError("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

HyperellipticModel parse_curve(const std::string& text) {
  std::vector<mpq_class> c;
  for (const auto& part : split(text, ',')) c.push_back(parse_rational(part));
  return HyperellipticModel::from_descending(c);
}

RationalPoint parse_point(const std::string& text) {
  std::string s = strip(text);
  if (s == "inf" || s == "inf+") return RationalPoint::at_infinity(1);
  if (s == "inf-") return RationalPoint::at_infinity(-1);
  if (s.size() < 5 || s.front() != '(' || s.back() != ')') throw ConfigError("point must look like (x,y): '" + text + "'");
  auto parts = split(s.substr(1, s.size() - 2), ',');
  if (parts.size() != 2) throw ConfigError("point must have two coordinates: '" + text + "'");
  return RationalPoint{parse_rational(parts[0]), parse_rational(parts[1])};
}

// "P;Q" is P - Q; otherwise every entry carries a multiplicity "n*P".
std::vector<std::pair<long, RationalPoint>> parse_divisor(const std::string& text) {
  auto parts = split(strip(text), ';');
  std::vector<std::pair<long, RationalPoint>> D;
  bool explicit_mult = text.find('*') != std::string::npos;
  if (!explicit_mult) {
    if (parts.size() != 2) throw ConfigError("divisor without multiplicities must be 'P;Q' meaning P - Q");
    D.push_back({1, parse_point(parts[0])});
    D.push_back({-1, parse_point(parts[1])});
    return D;
  }
  for (const auto& part : parts) {
    auto star = part.find('*');
    if (star == std::string::npos) throw ConfigError("divisor entry needs a multiplicity: '" + part + "'");
    mpq_class n = parse_rational(part.substr(0, star));
    if (n.get_den() != 1) throw ConfigError("multiplicity must be an integer");
    D.push_back({n.get_num().get_si(), parse_point(part.substr(star + 1))});
  }
  return D;
}

json padic_json(const PadicNumber& a) {
  json j;
  j["digits"] = a.to_string();
  j["precision"] = a.precision();
  j["valuation"] = a.is_zero() ? a.precision() : a.valuation();
  j["unit"] = a.is_zero() ? std::string("0") : a.unit().get_str();
  return j;
}

json local_point_json(const LocalPoint& pt) {
  if (pt.infinity) return json{{"infinity", true}, {"y_ratio", padic_json(pt.y)}};
  return json{{"x", padic_json(pt.x)}, {"y", padic_json(pt.y)}};
}

json model_json(const HyperellipticModel& m) {
  json c = json::array();
  for (auto it = m.g().rbegin(); it != m.g().rend(); ++it) c.push_back(it->get_str());
  return json{{"equation", m.to_string()}, {"coefficients_descending", c}, {"genus", m.genus()}};
}

struct Options {
  std::string curve, from, to, basepoint, output;
  std::vector<std::string> generators, points;
  long prime = 0, precision = 10, terms = 0, field = -1, disc_bound = 5, height_bound = 2, rank = -1;
  int extension = 1;
  bool timings = false;
};

json config_json(const std::string& command, const Options& o) {
  json c;
  c["command"] = command;
  if (!o.curve.empty()) c["curve"] = o.curve;
  if (command != "bielliptic-verify" && command != "brings-verify" && command != "brings-search") {
    c["prime"] = o.prime;
  }
  if (command == "points-mod-p") c["extension"] = o.extension;
  if (command == "frobenius" || command == "integrate" || command == "chabauty") c["precision"] = o.precision;
  if (command == "chabauty") {
    c["terms"] = o.terms;
    c["generators"] = o.generators;
    c["basepoint"] = o.basepoint;
    c["rank"] = o.rank < 0 ? static_cast<long>(o.generators.size()) : o.rank;
  }
  if (command == "integrate") {
    c["from"] = o.from;
    c["to"] = o.to;
  }
  if (command == "bielliptic-verify" || command == "brings-verify") {
    c["field"] = o.field;
    c["points"] = o.points;
  }
  if (command == "brings-search") {
    c["disc_bound"] = o.disc_bound;
    c["height_bound"] = o.height_bound;
  }
  return c;
}

constexpr long kMaxPrecision = 200;

void require_prime(long p) {
  if (!is_odd_prime(p)) throw ConfigError("--prime must be an odd prime");
}

void require_precision(long n) {
  if (n < 1 || n > kMaxPrecision) throw ConfigError("--precision must lie in [1, " + std::to_string(kMaxPrecision) + "]");
}

void cmd_points(const Options& o, json& result, json&) {
  require_prime(o.prime);
  HyperellipticModel m = parse_curve(o.curve);
  if (o.extension < 1 || o.extension > 4) throw ConfigError("--extension must be between 1 and 4");
  FiniteField F(o.prime, o.extension);
  auto pts = points_mod_p(m, o.prime, o.extension);
  json list = json::array();
  for (const auto& pt : pts) {
    if (pt.infinity) list.push_back(m.odd_degree() ? "inf" : "inf:" + F.to_string(pt.y));
    else list.push_back("(" + F.to_string(pt.x) + "," + F.to_string(pt.y) + ")");
  }
  result["good_reduction"] = check_good_reduction(m, o.prime);
  result["count"] = pts.size();
  result["points"] = list;
}

void cmd_disks(const Options& o, json& result, json&) {
  require_prime(o.prime);
  require_precision(o.precision);
  HyperellipticModel m = parse_curve(o.curve);
  json list = json::array();
  for (const auto& d : classify_disks(m, o.prime)) {
    json j{{"label", d.label()}, {"kind", std::string(to_string(d.kind))}};
    j["center"] = local_point_json(lift_disk_center(d, m, o.prime, std::max(o.precision, 2L)));
    list.push_back(j);
  }
  result["disks"] = list;
}

json integer_list(const std::vector<mpz_class>& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back(c.get_str());
  return a;
}

void cmd_frobenius(const Options& o, json& result, json& cert) {
  require_prime(o.prime);
  require_precision(o.precision);
  HyperellipticModel m = parse_curve(o.curve);
  OddModelChange ch = to_odd_model(m);
  FrobeniusData fd = frobenius_matrix(ch.target, o.prime, o.precision);
  json mat = json::array();
  for (const auto& row : fd.matrix) {
    json r = json::array();
    for (const auto& e : row) r.push_back(padic_json(e));
    mat.push_back(r);
  }
  auto chi = zeta_numerator(fd);
  result["odd_model"] = model_json(ch.target);
  result["change_of_coordinates"] = ch.description();
  result["basis"] = fd.basis;
  result["matrix"] = mat;
  result["charpoly_constant_first"] = integer_list(chi);
  result["certified_precision"] = fd.precision;
  json counts;
  for (int k = 1; k <= 2; ++k) {
    mpz_class lf = lefschetz_count(chi, o.prime, k);
    long bf = count_points_mod_p(ch.target, o.prime, k);
    counts["F_p^" + std::to_string(k)] = json{{"lefschetz", lf.get_str()}, {"brute_force", bf}, {"agree", lf == bf}};
  }
  cert["point_counts"] = counts;
}

json integrals_json(const std::vector<PadicNumber>& v, Provenance route) {
  json a = json::array();
  for (std::size_t i = 0; i < v.size(); ++i)
    a.push_back(json{{"differential", "x^" + std::to_string(i) + " dx/(2y)"},
                     {"value", padic_json(v[i])},
                     {"value_for_x^i_dx_over_y", padic_json(v[i] * mpq_class(2))},
                     {"provenance", std::string(to_string(route))}});
  return a;
}

void cmd_integrate(const Options& o, json& result, json&) {
  require_prime(o.prime);
  require_precision(o.precision);
  HyperellipticModel m = parse_curve(o.curve);
  RationalPoint P = parse_point(o.from), Q = parse_point(o.to);
  auto vals = basis_integrals(P, Q, m, o.prime, o.precision);
  std::vector<PadicNumber> v;
  for (const auto& iv : vals) v.push_back(iv.value);
  ColemanIntegrator ci(m, o.prime, o.precision);
  result["integrals"] = integrals_json(v, ci.route());
  result["working_precision"] = ci.working_precision();
}

json series_json(const TruncatedSeries& s) {
  json a = json::array();
  for (long k = 0; k < s.order() && k < static_cast<long>(s.coefficients().size()); ++k) a.push_back(padic_json(s.coefficient(k)));
  return a;
}

void cmd_chabauty(const Options& o, json& result, json& cert, double& seconds) {
  require_prime(o.prime);
  require_precision(o.precision);
  if (o.terms < 0 || o.terms > 2000) throw ConfigError("--terms must lie in [0, 2000]");
  HyperellipticModel m = parse_curve(o.curve);
  MordellWeilInput mw;
  for (const auto& g : o.generators) mw.generators.push_back(parse_divisor(g));
  mw.rank = o.rank < 0 ? static_cast<int>(mw.generators.size()) : static_cast<int>(o.rank);
  if (o.basepoint.empty()) throw ConfigError("--basepoint is required");
  RationalPoint b = parse_point(o.basepoint);
  ChabautyReport rep = run(m, o.prime, mw, b, o.precision, o.terms);
  seconds = rep.seconds;

  json diffs = json::array();
  for (const auto& w : rep.annihilator.differentials) {
    json c = json::array();
    for (const auto& a : w.coefficients) c.push_back(padic_json(a));
    diffs.push_back(json{{"coefficients", c}, {"text", w.to_string()}});
  }
  result["annihilating_differentials"] = diffs;
  json pair = json::array();
  for (const auto& row : rep.annihilator.pairings) {
    json r = json::array();
    for (const auto& a : row) r.push_back(padic_json(a));
    pair.push_back(r);
  }
  result["pairings"] = pair;

  json disks = json::array();
  for (const auto& d : rep.disks) {
    json j{{"label", d.locus.disk.label()}, {"kind", std::string(to_string(d.locus.disk.kind))}};
    if (d.error) {
      j["error"] = *d.error;
    } else {
      j["series_in_pT"] = series_json(d.locus.series);
      j["strassman"] = d.locus.strassman;
      json z = json::array();
      for (const auto& t : d.locus.zeros) z.push_back(padic_json(t));
      j["zeros_T"] = z;
      json pts = json::array();
      for (const auto& pt : d.locus.points) pts.push_back(local_point_json(pt));
      j["points"] = pts;
      json cl = json::array();
      for (const auto& c : d.locus.clusters)
        cl.push_back(json{{"center", padic_json(c.center)}, {"radius_exponent", c.radius_exponent}, {"multiplicity", c.multiplicity}});
      j["clusters"] = cl;
    }
    disks.push_back(j);
  }
  result["disks"] = disks;
  json rat = json::array(), alg = json::array(), unrec = json::array();
  for (const auto& pt : rep.rational_points()) rat.push_back(pt.to_string());
  for (const auto& pt : rep.points) {
    if (pt.kind == PointKind::Algebraic) {
      json a{{"minimal_polynomial", pt.minimal_polynomial}, {"y", padic_json(pt.local.y)}, {"disk", pt.disk.label()}};
      if (pt.x) a["x"] = pt.x->get_str();
      alg.push_back(a);
    } else if (pt.kind == PointKind::Unrecognized) {
      unrec.push_back(json{{"point", local_point_json(pt.local)}, {"disk", pt.disk.label()}});
    }
  }
  result["rational_points"] = rat;
  result["algebraic_points"] = alg;
  result["unrecognized_points"] = unrec;
  result["partial"] = rep.partial;
  result["recognition_rule"] = "rational reconstruction of x; algebraic when y^2 = g(x) has height <= 10^6";

  if (rep.bound) cert["coleman_bound"] = *rep.bound;
  cert["bound_note"] = rep.bound_note;
  cert["total_zeros"] = rep.total_zeros;
  json counts = json::object();
  for (const auto& d : rep.disks)
    if (!d.error) counts[d.locus.disk.label()] = d.locus.strassman;
  cert["strassman_counts"] = counts;
  cert["involution_closed"] = rep.involution_closed;
  json nontorsion = json::array();
  for (const auto& row : rep.annihilator.pairings) {
    bool nz = std::any_of(row.begin(), row.end(), [](const PadicNumber& a) { return !a.is_zero(); });
    nontorsion.push_back(nz);
  }
  cert["generator_pairing_nonzero"] = nontorsion;
  json small = json::array();
  bool all_found = true;
  auto found = rep.rational_points();
  for (const auto& pt : small_height_points(m, 20)) {
    small.push_back(pt.to_string());
    if (std::find(found.begin(), found.end(), pt) == found.end()) all_found = false;
  }
  cert["small_height_points"] = small;
  cert["small_height_points_recovered"] = all_found;
}

void cmd_bielliptic(const Options& o, json& result, json& cert) {
  HyperellipticModel m = parse_curve(o.curve);
  BiellipticModel bm = BiellipticModel::from(m);
  auto [c1, c2] = quotient_curves(bm);
  result["C1"] = json{{"model", model_json(c1.curve)}, {"map", c1.map}};
  result["C2"] = json{{"model", model_json(c2.curve)}, {"map", c2.map}};
  PullbackIdentities id = check_pullback_identities();
  cert["f1_on_curve_identity"] = id.f1_on_curve;
  cert["f2_on_curve_identity"] = id.f2_on_curve;
  cert["f1_pullback_x_dx_over_y"] = id.f1_differential;
  cert["f2_pullback_minus_dx_over_y"] = id.f2_differential;
  cert["C1_generic"] = id.c1_generic;
  cert["C2_generic"] = id.c2_generic;
  if (!is_squarefree(o.field) || o.field == 1) throw ConfigError("--field must be squarefree and not 1");
  json pts = json::array();
  std::vector<QuadPoint> listed;
  for (const auto& s : o.points) {
    QuadPoint pt;
    try {
      pt = QuadPoint::parse(s, o.field);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
    bool ok = on_curve(m, pt);
    json j{{"point", pt.to_string()}, {"on_curve", ok}};
    if (ok) {
      listed.push_back(pt);
      for (int which : {1, 2}) {
        QuadPoint im = push_point(bm, which, pt);
        const HyperellipticModel& C = which == 1 ? c1.curve : c2.curve;
        j["f" + std::to_string(which)] = json{{"image", im.to_string()}, {"on_quotient", on_curve(C, im)}};
      }
    }
    pts.push_back(j);
  }
  result["points"] = pts;
  if (m.is_even()) {
    bool closed = true;
    const long d = o.field;
    for (const auto& pt : listed) {
      if (pt.infinity) continue;
      std::vector<QuadPoint> images{{pt.x, -pt.y}, {-pt.x, pt.y}, {-pt.x, -pt.y}};
      for (const auto& im : images) {
        bool in = std::any_of(listed.begin(), listed.end(), [&](const QuadPoint& q) { return q == im; });
        if (!in) closed = false;
      }
    }
    (void)d;
    cert["listed_points_closed_under_involutions"] = closed;
  }
}

void cmd_brings_verify(const Options& o, json& result, json&) {
  json pts = json::array();
  for (const auto& s : o.points) {
    ProjPoint5 pt = [&] {
      try {
        return ProjPoint5::parse(s, o.field);
      } catch (const Error& e) {
        throw ConfigError(e.what());
      }
    }();
    json j{{"point", pt.to_string()}, {"on_curve", verify_brings(pt)}};
    if (verify_brings(pt)) {
      auto orb = orbit(pt);
      bool all = std::all_of(orb.begin(), orb.end(), verify_brings);
      j["orbit_size"] = orb.size();
      j["orbit_on_curve"] = all;
      json traces = json::object();
      for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b) traces[std::to_string(a) + std::to_string(b)] = trace_to_e(pt, {a, b}).to_string();
      j["trace_images_on_E"] = traces;
    }
    pts.push_back(j);
  }
  result["points"] = pts;
}

void cmd_brings_search(const Options& o, json& result, json& cert) {
  SearchResult r = bounded_quadratic_search(o.disc_bound, o.height_bound);
  result["fields"] = r.fields;
  json orbits = json::array();
  for (const auto& orb : r.orbits) {
    json reps = json::array();
    for (const auto& p : orb.representatives) reps.push_back(p.to_string());
    orbits.push_back(json{{"representatives", reps}, {"orbit_size", orb.orbit_size}});
  }
  result["orbits"] = orbits;
  cert["candidates"] = r.candidates;
  cert["passed_s3_filter"] = r.filtered;
  cert["note"] = "bounded search; not a proof";
}

void write_atomic(const std::string& path, const std::string& text) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open output file " + path);
    f << text;
    if (!f.flush()) throw ConfigError("cannot write output file " + path);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw ConfigError("cannot move output into place: " + path);
}

std::string error_report(const std::string& kind, const std::string& message, std::optional<long> shortfall = {}) {
  json e{{"kind", kind}, {"message", message}};
  if (shortfall) e["shortfall"] = *shortfall;
  return json{{"schema", 1}, {"error", e}}.dump(2) + "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::string& out) {
  CLI::App app{"Chabauty-Coleman computations on hyperelliptic curves"};
  app.require_subcommand(1);
  Options o;

  auto add_curve = [&](CLI::App* s) { s->add_option("--curve", o.curve, "coefficients, highest degree first")->required(); };
  auto add_prime = [&](CLI::App* s) { s->add_option("--prime", o.prime, "odd prime of good reduction")->required(); };
  auto add_common = [&](CLI::App* s) {
    s->add_option("--output", o.output, "write the JSON report here");
    s->add_flag("--timings", o.timings, "include wall-clock timings");
  };

  auto* pts = app.add_subcommand("points-mod-p", "points over F_p^k");
  add_curve(pts), add_prime(pts), add_common(pts);
  pts->add_option("--extension", o.extension, "k");
  auto* disks = app.add_subcommand("disks", "residue disks and their canonical centers");
  add_curve(disks), add_prime(disks), add_common(disks);
  disks->add_option("--precision", o.precision);
  auto* frob = app.add_subcommand("frobenius", "Frobenius matrix and zeta numerator");
  add_curve(frob), add_prime(frob), add_common(frob);
  frob->add_option("--precision", o.precision);
  auto* integ = app.add_subcommand("integrate", "Coleman integrals of x^i dx/(2y)");
  add_curve(integ), add_prime(integ), add_common(integ);
  integ->add_option("--precision", o.precision);
  integ->add_option("--from", o.from)->required();
  integ->add_option("--to", o.to)->required();
  auto* chab = app.add_subcommand("chabauty", "Chabauty-Coleman sweep over all residue disks");
  add_curve(chab), add_prime(chab), add_common(chab);
  chab->add_option("--precision", o.precision);
  chab->add_option("--terms", o.terms, "series terms per disk (0 = automatic)");
  chab->add_option("--generator", o.generators, "degree-zero divisor 'P;Q' (P - Q) or 'n*P;m*Q;...'");
  chab->add_option("--rank", o.rank, "Mordell-Weil rank (default: number of generators)");
  chab->add_option("--basepoint", o.basepoint)->required();
  auto* bi = app.add_subcommand("bielliptic-verify", "quotient curves and exact point checks over Q(sqrt d)");
  add_curve(bi), add_common(bi);
  bi->add_option("--field", o.field, "squarefree d");
  bi->add_option("--point", o.points, "(x,y) with coordinates a+b*s (i allowed for d = -1)");
  auto* bv = app.add_subcommand("brings-verify", "check points of Bring's curve");
  add_common(bv);
  bv->add_option("--field", o.field, "squarefree d");
  bv->add_option("--point", o.points, "(a:b:c:d:e)")->required();
  auto* bs = app.add_subcommand("brings-search", "bounded search for quadratic points on Bring's curve");
  add_common(bs);
  bs->add_option("--disc-bound", o.disc_bound, "bound on |field discriminant|");
  bs->add_option("--height-bound", o.height_bound, "bound on numerators and denominators");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out = app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    out = error_report("ConfigError", e.what());
    return kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  json report{{"schema", 1}};
  json result = json::object(), cert = json::object();
  auto start = std::chrono::steady_clock::now();
  double inner = -1;
  try {
    report["config"] = config_json(command, o);
    if (command == "points-mod-p") cmd_points(o, result, cert);
    else if (command == "disks") cmd_disks(o, result, cert);
    else if (command == "frobenius") cmd_frobenius(o, result, cert);
    else if (command == "integrate") cmd_integrate(o, result, cert);
    else if (command == "chabauty") cmd_chabauty(o, result, cert, inner);
    else if (command == "bielliptic-verify") cmd_bielliptic(o, result, cert);
    else if (command == "brings-verify") cmd_brings_verify(o, result, cert);
    else if (command == "brings-search") cmd_brings_search(o, result, cert);
  } catch (const ConfigError& e) {
    out = error_report("ConfigError", e.what());
    return kExitConfig;
  } catch (const PrecisionExhausted& e) {
    out = error_report("PrecisionExhausted", e.what(), e.shortfall());
    return kExitPrecision;
  } catch (const Error& e) {
    out = error_report(std::string(to_string(e.kind())), e.what());
    return e.kind() == ErrorKind::InvalidInput ? kExitConfig : kExitDomain;
  }
  report["result"] = result;
  report["certificates"] = cert;
  if (o.timings) {
    json t{{"total_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    if (inner >= 0) t["sweep_seconds"] = inner;
    report["timings"] = t;
  }
  out = report.dump(2) + "\n";
  if (!o.output.empty()) {
    try {
      write_atomic(o.output, out);
    } catch (const ConfigError& e) {
      out = error_report("ConfigError", e.what());
      return kExitConfig;
    }
  }
  return kExitOk;
}

}  // namespace chabauty::cli
