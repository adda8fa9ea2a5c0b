// polya-pila: count rational points on plane curves and inspect the certificates behind the count.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "polya_pila/differential.hpp"
#include "polya_pila/errors.hpp"
#include "polya_pila/interpolation.hpp"
#include "polya_pila/parse.hpp"
#include "polya_pila/pipeline.hpp"

using namespace polya_pila;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kPrecondition = 2, kCertificate = 3, kGuardrail = 4 };

struct Globals {
  bool json_out = false;
  bool csv_out = false;
  std::uint64_t seed = 7;
  std::optional<int> k;
  std::optional<int> r;
  bool force = false;
  std::string config;
};

PipelineConfig load_config(const Globals& g) {
  PipelineConfig cfg;
  if (!g.config.empty()) {
    std::ifstream in(g.config);
    if (!in) throw PreconditionError("cannot read config " + g.config);
    cfg = config_from_json(json::parse(in));
  }
  if (g.k) cfg.k_override = g.k;
  if (g.r) cfg.r_override = g.r;
  if (g.force) cfg.force = true;
  return cfg;
}

std::string point_str(const AlgebraicPoint& p) { return "(" + p.x.to_string() + ", " + p.y.to_string() + ")"; }

std::vector<long> parse_heights(const std::string& s) {
  std::vector<long> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(std::stol(item));
  return out;
}

void emit(const Globals& g, const json& j, const std::string& csv) {
  if (g.csv_out) std::cout << csv;
  else std::cout << j.dump(2) << "\n";
}

void check_height(const PipelineConfig& cfg, long H, bool integral) {
  const long limit = integral ? cfg.guardrails.max_integral_height : cfg.guardrails.max_height;
  if (!cfg.force && H > limit)
    throw GuardrailError("H = " + std::to_string(H) + " exceeds " + std::to_string(limit) + " (use --force)");
}

int cmd_count(const Globals& g, const std::string& curve_text, long H, bool integral, const std::string& mode) {
  PipelineConfig cfg = load_config(g);
  cfg.H = H;
  if (!mode.empty()) cfg.mode = mode_from_string(mode);
  PlaneCurve curve = curve_new(parse_bipoly_any(curve_text));
  if (integral) {
    check_height(cfg, H, true);
    const long n = static_cast<long>(enumerate_integral_points(curve, H).size());
    emit(g, {{"curve", curve.defining().to_string()}, {"H", H}, {"integral", true}, {"count", n}},
         "curve,H,count\n\"" + curve.defining().to_string() + "\"," + std::to_string(H) + "," + std::to_string(n) + "\n");
    return kOk;
  }
  CountReport rep = run_pipeline(curve, cfg);
  std::ostringstream csv;
  csv << "curve,d,H,k,r,regime,total,brute_total,covering_N,certificates\n";
  csv << "\"" << rep.curve << "\"," << rep.d << "," << rep.H << "," << rep.k << "," << rep.r << ","
      << to_string(rep.regime) << "," << rep.total << "," << (rep.brute_total ? std::to_string(*rep.brute_total) : "")
      << "," << rep.covering_N << "," << rep.certificates << "\n";
  emit(g, to_json(rep), csv.str());
  return kOk;
}

int cmd_points(const Globals& g, const std::string& curve_text, long H, bool integral, bool unit_box) {
  PipelineConfig cfg = load_config(g);
  check_height(cfg, H, integral);
  PlaneCurve curve = curve_new(parse_bipoly_any(curve_text));
  auto pts = integral ? enumerate_integral_points(curve, H)
                      : enumerate_rational_points(curve, H, unit_box ? std::optional<Box>(Box::unit()) : std::nullopt);
  json arr = json::array();
  std::string csv = "x,y,height\n";
  for (const auto& p : pts) {
    arr.push_back({{"x", to_string(p.x)}, {"y", to_string(p.y)}, {"height", to_string(p.height)}});
    csv += to_string(p.x) + "," + to_string(p.y) + "," + to_string(p.height) + "\n";
  }
  emit(g, {{"curve", curve.defining().to_string()}, {"H", H}, {"count", pts.size()}, {"points", arr}}, csv);
  return kOk;
}

int cmd_wronskians(const Globals& g, const std::string& curve_text) {
  if (!g.k) throw PreconditionError("wronskians needs --k");
  PlaneCurve curve = curve_new(parse_bipoly_any(curve_text));
  auto seq = wronskians(TangentOperator::of(curve), *g.k);
  json arr = json::array();
  std::string csv = "j,degree,degree_bound,poly\n";
  for (const auto& e : seq.entries) {
    arr.push_back({{"j", e.j}, {"degree", e.degree}, {"degree_bound", e.degree_bound}, {"poly", e.poly.to_string()}});
    csv += std::to_string(e.j) + "," + std::to_string(e.degree) + "," + std::to_string(e.degree_bound) + ",\"" +
           e.poly.to_string() + "\"\n";
  }
  emit(g, {{"curve", curve.defining().to_string()}, {"k", seq.k}, {"wronskians", arr}}, csv);
  return kOk;
}

ArcDecomposition decompose_from(const Globals& g, const PlaneCurve& curve) {
  if (!g.k) throw PreconditionError("this command needs --k");
  const int r = g.r ? *g.r : static_cast<int>(mu(*g.k));
  return decompose_arcs(curve, *g.k, r);
}

int cmd_arcs(const Globals& g, const std::string& curve_text) {
  PlaneCurve curve = curve_new(parse_bipoly_any(curve_text));
  ArcDecomposition dec = decompose_from(g, curve);
  json arcs = json::array();
  std::string csv = "arc,direction,start,end\n";
  for (std::size_t a = 0; a < dec.arcs.size(); ++a) {
    const Arc& arc = dec.arcs[a];
    const std::string dir = arc.direction == Direction::XMonotone ? "x-monotone" : "y-monotone";
    arcs.push_back({{"arc", a}, {"direction", dir}, {"start", point_str(arc.start)}, {"end", point_str(arc.end)}});
    csv += std::to_string(a) + "," + dir + ",\"" + point_str(arc.start) + "\",\"" + point_str(arc.end) + "\"\n";
  }
  json splits = json::array();
  for (const auto& s : dec.split_points.points) splits.push_back({{"point", point_str(s.point)}, {"provenance", s.provenance}});
  emit(g,
       {{"curve", curve.defining().to_string()},
        {"k", dec.k},
        {"r", dec.r},
        {"arcs", arcs},
        {"split_points", splits},
        {"bezout_budget", dec.split_points.bezout_budget},
        {"component_count", dec.component_count},
        {"harnack_ok", harnack_check(dec)}},
       csv);
  return kOk;
}

int cmd_cover(const Globals& g, const std::string& curve_text, long H) {
  PipelineConfig cfg = load_config(g);
  check_height(cfg, H, false);
  PlaneCurve curve = curve_new(parse_bipoly_any(curve_text));
  ArcDecomposition dec = decompose_from(g, curve);
  std::vector<std::vector<RationalPoint>> on_arc(dec.arcs.size());
  long at_split = 0;
  for (const auto& p : enumerate_rational_points(curve, H, Box::unit())) {
    int a = locate_on_arcs(dec, {AlgebraicReal(p.x), AlgebraicReal(p.y)});
    if (a < 0) ++at_split;
    else on_arc[static_cast<std::size_t>(a)].push_back(p);
  }
  json arr = json::array();
  std::string csv = "arc,points,curve,poly,support\n";
  long N = 0;
  for (std::size_t a = 0; a < on_arc.size(); ++a) {
    auto& pts = on_arc[a];
    if (dec.arcs[a].direction == Direction::YMonotone)
      std::sort(pts.begin(), pts.end(), [](const RationalPoint& u, const RationalPoint& v) { return u.y < v.y; });
    Covering cov = cover_arc_points(pts, dec.k);
    N += cov.N;
    json curves = json::array();
    for (std::size_t c = 0; c < cov.curves.size(); ++c) {
      const auto& aux = cov.curves[c];
      curves.push_back({{"poly", aux.poly.to_string()}, {"support", aux.support.size()}});
      csv += std::to_string(a) + "," + std::to_string(pts.size()) + "," + std::to_string(c) + ",\"" +
             aux.poly.to_string() + "\"," + std::to_string(aux.support.size()) + "\n";
    }
    arr.push_back({{"arc", a}, {"points", pts.size()}, {"N", cov.N}, {"curves", curves}});
  }
  emit(g, {{"curve", curve.defining().to_string()}, {"H", H}, {"k", dec.k}, {"N", N}, {"split_point_points", at_split}, {"arcs", arr}},
       csv);
  return kOk;
}

int cmd_certify(const Globals& g, const std::string& curve_text, const std::string& q_text) {
  PlaneCurve curve = curve_new(parse_bipoly_any(curve_text));
  ArcDecomposition dec = decompose_from(g, curve);
  const BiPoly q = parse_bipoly_any(q_text);
  auto certs = chebyshev_certify(dec, q);
  json arr = json::array();
  std::string csv = "arc,k,count,bound\n";
  for (const auto& c : certs) {
    arr.push_back({{"arc", c.arc}, {"k", c.k}, {"count", c.count}, {"bound", c.bound}});
    csv += std::to_string(c.arc) + "," + std::to_string(c.k) + "," + std::to_string(c.count) + "," +
           std::to_string(c.bound) + "\n";
  }
  emit(g,
       {{"curve", curve.defining().to_string()},
        {"q", q.to_string()},
        {"certificates", arr},
        {"bezout_ok", bezout_global_check(curve, q)}},
       csv);
  return kOk;
}

int cmd_family(const Globals& g, FamilySpec spec, const std::string& heights, const std::string& out) {
  PipelineConfig cfg = load_config(g);
  spec.seed = g.seed;
  const std::string csv = run_family(make_family(spec), parse_heights(heights), cfg);
  if (out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(out);
    if (!f) throw PreconditionError("cannot write " + out);
    f << csv;
  }
  return kOk;
}

int cmd_dgc(const std::string& f_text, const std::string& heights) {
  std::cout << dgc_demo(parse_sparse(f_text, {"x1", "x2", "x3"}), parse_heights(heights));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational points of bounded height on plane curves, with certified arc counts"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  auto* fmt = app.add_option_group("format");
  fmt->add_flag("--json", g.json_out, "JSON output (default)");
  fmt->add_flag("--csv", g.csv_out, "CSV output");
  fmt->require_option(0, 1);
  app.add_option("--seed", g.seed, "Seed for generated families");
  app.add_option("--k", g.k, "Interpolation degree k");
  app.add_option("--r", g.r, "Derivative order r (default mu(k))");
  app.add_flag("--force", g.force, "Skip the desk-scale guardrails");
  app.add_option("--config", g.config, "JSON file with pipeline settings")->check(CLI::ExistingFile);

  std::string curve, q, f, mode, heights, out;
  long H = 0;
  bool integral = false, unit_box = false;
  FamilySpec spec;
  spec.kind = "fermat";

  auto* count = app.add_subcommand("count", "Count points of height <= H");
  count->add_option("--curve", curve, "Curve expression in x, y")->required();
  count->add_option("--H", H, "Height bound")->required()->check(CLI::PositiveNumber);
  count->add_flag("--integral", integral, "Integer points with |x|, |y| <= H");
  count->add_option("--mode", mode, "exact-count, certify-only or brute-only");

  auto* points = app.add_subcommand("points", "List points of height <= H");
  points->add_option("--curve", curve, "Curve expression in x, y")->required();
  points->add_option("--H", H, "Height bound")->required()->check(CLI::PositiveNumber);
  points->add_flag("--integral", integral, "Integer points with |x|, |y| <= H");
  points->add_flag("--unit-box", unit_box, "Only points in [0, 1]^2");

  auto* wr = app.add_subcommand("wronskians", "Partial Wronskians of the degree-k monomials");
  wr->add_option("--curve", curve, "Curve expression in x, y")->required();

  auto* arcs = app.add_subcommand("arcs", "Monotone arc decomposition in the unit square");
  arcs->add_option("--curve", curve, "Curve expression in x, y")->required();

  auto* cover = app.add_subcommand("cover", "Cover the unit-square points of each arc by degree-k curves");
  cover->add_option("--curve", curve, "Curve expression in x, y")->required();
  cover->add_option("--H", H, "Height bound")->required()->check(CLI::PositiveNumber);

  auto* certify = app.add_subcommand("certify", "Per-arc zero counts of q against mu(k)");
  certify->add_option("--curve", curve, "Curve expression in x, y")->required();
  certify->add_option("--q", q, "Auxiliary polynomial of degree <= k")->required();

  auto* family = app.add_subcommand("family", "CSV of counts over a curve family and height grid");
  family->add_option("--family", spec.kind, "fermat, random-dense, circle-like or file")
      ->check(CLI::IsMember({"fermat", "random-dense", "circle-like", "file"}));
  family->add_option("--dmin", spec.d_min, "Smallest degree");
  family->add_option("--dmax", spec.d_max, "Largest degree");
  family->add_option("--count", spec.count, "Curves per degree");
  family->add_option("--file", spec.file, "Curve list, one per line");
  family->add_option("--heights", heights, "Comma separated heights")->required();
  family->add_option("--out", out, "Output path (default stdout)");

  auto* dgc = app.add_subcommand("dgc-demo", "Integer points on a surface in three variables, direct and by slices");
  dgc->add_option("--f", f, "Polynomial in x1, x2, x3")->required();
  dgc->add_option("--heights", heights, "Comma separated heights")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kPrecondition;
  }

  try {
    if (*count) return cmd_count(g, curve, H, integral, mode);
    if (*points) return cmd_points(g, curve, H, integral, unit_box);
    if (*wr) return cmd_wronskians(g, curve);
    if (*arcs) return cmd_arcs(g, curve);
    if (*cover) return cmd_cover(g, curve, H);
    if (*certify) return cmd_certify(g, curve, q);
    if (*family) return cmd_family(g, spec, heights, out);
    if (*dgc) return cmd_dgc(f, heights);
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  } catch (const CertificateError& e) {
    std::cerr << e.what() << "\n" << e.bundle() << "\n";
    return kCertificate;
  } catch (const GuardrailError& e) {
    std::cerr << "guardrail: " << e.what() << "\n";
    return kGuardrail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
