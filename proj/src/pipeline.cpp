#include "polya_pila/pipeline.hpp"

#include <mpfr.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "polya_pila/errors.hpp"
#include "polya_pila/parse.hpp"

namespace polya_pila {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Certified: return "certified";
    case Regime::BruteFallback: return "brute-fallback";
    case Regime::BudgetFallback: return "budget-fallback";
  }
  return "";
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::ExactCount: return "exact-count";
    case Mode::CertifyOnly: return "certify-only";
    case Mode::BruteOnly: return "brute-only";
  }
  return "";
}

Mode mode_from_string(const std::string& s) {
  for (Mode m : {Mode::ExactCount, Mode::CertifyOnly, Mode::BruteOnly})
    if (to_string(m) == s) return m;
  throw PreconditionError("unknown mode: " + s);
}

Parameters choose_parameters(long H, int d) {
  if (H < 2) throw PreconditionError("choose_parameters: H must be at least 2");
  if (d < 1) throw PreconditionError("choose_parameters: d must be positive");
  // ln H is never an integer for H >= 2, so the double ceiling is exact at these sizes
  const int k = std::max(2, static_cast<int>(std::ceil(std::log(static_cast<double>(H)))));
  return {k, static_cast<int>(mu(k)), k < d ? Regime::Certified : Regime::BruteFallback};
}

namespace {

// c * d^2 * H^(2/d) * (ln H)^kappa for c >= 0, rounded in one direction throughout.
double bound_rounded(int d, long H, const BigRational& c, int kappa, mpfr_rnd_t rnd) {
  mpfr_t t, l;
  mpfr_inits2(192, t, l, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_si(t, H, MPFR_RNDN);
  mpfr_mul_si(t, t, H, rnd);  // exact
  mpfr_rootn_ui(t, t, static_cast<unsigned long>(d), rnd);
  mpfr_set_si(l, H, MPFR_RNDN);
  mpfr_log(l, l, rnd);
  mpfr_pow_ui(l, l, static_cast<unsigned long>(kappa), rnd);
  mpfr_mul(t, t, l, rnd);
  mpfr_mul_ui(t, t, static_cast<unsigned long>(d) * static_cast<unsigned long>(d), rnd);
  mpfr_mul_q(t, t, c.get_mpq_t(), rnd);
  double out = mpfr_get_d(t, rnd);
  mpfr_clears(t, l, static_cast<mpfr_ptr>(nullptr));
  return out;
}

}  // namespace

Enclosure bound_value(int d, long H, const BigRational& c, int kappa) {
  if (H < 2) throw PreconditionError("bound_value: H must be at least 2");
  if (d < 1 || kappa < 0) throw PreconditionError("bound_value: d >= 1 and kappa >= 0 required");
  if (c < 0) {
    BigRational a = -c;
    return {-bound_rounded(d, H, a, kappa, MPFR_RNDU), -bound_rounded(d, H, a, kappa, MPFR_RNDD)};
  }
  return {bound_rounded(d, H, c, kappa, MPFR_RNDD), bound_rounded(d, H, c, kappa, MPFR_RNDU)};
}

PipelineConfig config_from_json(const nlohmann::json& j, PipelineConfig base) {
  if (j.contains("H")) base.H = j.at("H").get<long>();
  if (j.contains("k")) base.k_override = j.at("k").get<int>();
  if (j.contains("r")) base.r_override = j.at("r").get<int>();
  if (j.contains("mode")) base.mode = mode_from_string(j.at("mode").get<std::string>());
  if (j.contains("force")) base.force = j.at("force").get<bool>();
  if (j.contains("kappa_grid")) base.kappa_grid = j.at("kappa_grid").get<std::vector<int>>();
  if (j.contains("guardrails")) {
    const auto& g = j.at("guardrails");
    if (g.contains("max_degree")) base.guardrails.max_degree = g.at("max_degree").get<int>();
    if (g.contains("max_height")) base.guardrails.max_height = g.at("max_height").get<long>();
    if (g.contains("max_integral_height")) base.guardrails.max_integral_height = g.at("max_integral_height").get<long>();
    if (g.contains("max_wronskian_degree"))
      base.guardrails.max_wronskian_degree = g.at("max_wronskian_degree").get<long>();
  }
  return base;
}

std::shared_ptr<const ArcDecomposition> DecompositionCache::get(const PlaneCurve& curve, int k, int r) {
  auto key = std::make_tuple(curve.defining().to_string(), k, r);
  auto it = store_.find(key);
  if (it != store_.end()) return it->second;
  auto dec = std::make_shared<const ArcDecomposition>(decompose_arcs(curve, k, r));
  store_.emplace(std::move(key), dec);
  return dec;
}

nlohmann::json to_json(const CountReport& r) {
  nlohmann::json images = nlohmann::json::array();
  for (const auto& im : r.images)
    images.push_back({{"map", im.map},
                      {"poly", im.poly},
                      {"status", im.status},
                      {"box_points", im.box_points},
                      {"split_points", im.split_points},
                      {"arcs", im.arcs},
                      {"covering_N", im.covering_N},
                      {"max_arc_intersections", im.max_arc_intersections}});
  nlohmann::json main = nlohmann::json::array();
  for (const auto& [kappa, e] : r.main_bound) main.push_back({{"kappa", kappa}, {"lo", e.lo}, {"hi", e.hi}});
  nlohmann::json counts{{"total", r.total},
                        {"box_total", r.box_total},
                        {"split_points", r.split_points},
                        {"per_arc", r.per_arc},
                        {"covering_N", r.covering_N},
                        {"certificates", r.certificates}};
  counts["brute_total"] = r.brute_total ? nlohmann::json(*r.brute_total) : nlohmann::json(nullptr);
  return {{"curve", r.curve},
          {"d", r.d},
          {"H", r.H},
          {"k", r.k},
          {"r", r.r},
          {"regime", to_string(r.regime)},
          {"mode", to_string(r.mode)},
          {"counts", counts},
          {"bounds", {{"main", main}, {"bezout_alternative", r.bezout_alternative}}},
          {"budget", {{"split_points", r.split_budget}}},
          {"images", images},
          {"seconds", r.seconds}};
}

namespace {

CertificateError pipeline_failure(const PlaneCurve& c, const std::string& detail, nlohmann::json extra = {}) {
  nlohmann::json bundle{{"curve", c.defining().to_string()}, {"detail", detail}};
  if (extra.is_object()) bundle.update(extra);
  return CertificateError("certificate violated: " + detail, bundle.dump());
}

// Locates the box points of one image on its arcs, covers each arc's points and certifies every
// covering curve against every arc.
void certify_image(const ArcDecomposition& dec, const std::vector<RationalPoint>& pts, ImageReport& ir,
                   CountReport& report) {
  std::vector<std::vector<RationalPoint>> on_arc(dec.arcs.size());
  for (const auto& pt : pts) {
    AlgebraicPoint ap{AlgebraicReal(pt.x), AlgebraicReal(pt.y)};
    int a = locate_on_arcs(dec, ap);
    if (a >= 0) {
      on_arc[static_cast<std::size_t>(a)].push_back(pt);
      continue;
    }
    bool split = std::any_of(dec.split_points.points.begin(), dec.split_points.points.end(),
                             [&](const SplitPoint& s) { return compare(s.point, ap) == 0; });
    if (!split)
      throw pipeline_failure(dec.curve, "box point on no arc", {{"x", to_string(pt.x)}, {"y", to_string(pt.y)}});
    ++ir.split_points;
  }
  for (std::size_t a = 0; a < on_arc.size(); ++a) {
    auto& arc_pts = on_arc[a];
    if (dec.arcs[a].direction == Direction::YMonotone)
      std::sort(arc_pts.begin(), arc_pts.end(), [](const RationalPoint& u, const RationalPoint& v) { return u.y < v.y; });
    Covering cov = cover_arc_points(arc_pts, dec.k);
    ir.covering_N += cov.N;
    for (const auto& aux : cov.curves) {
      auto certs = chebyshev_certify(dec, aux.poly);
      report.certificates += static_cast<long>(certs.size());
      for (const auto& c : certs) ir.max_arc_intersections = std::max(ir.max_arc_intersections, c.count);
      if (static_cast<int>(aux.support.size()) > certs[a].count)
        throw pipeline_failure(dec.curve, "covering curve misses its support",
                               {{"q", aux.poly.to_string()}, {"arc", a}, {"count", certs[a].count}});
    }
  }
  ir.arcs = static_cast<long>(dec.arcs.size());
  if (report.per_arc.empty() && ir.map == SymmetryMap{}.name())
    for (const auto& v : on_arc) report.per_arc.push_back(static_cast<int>(v.size()));
}

}  // namespace

CountReport run_pipeline(const PlaneCurve& curve, const PipelineConfig& cfg, DecompositionCache* cache) {
  const auto t0 = std::chrono::steady_clock::now();
  const int d = curve.degree();
  const long H = cfg.H;
  if (H < 1) throw PreconditionError("H must be positive");
  if (!cfg.force) {
    if (H > cfg.guardrails.max_height)
      throw GuardrailError("H = " + std::to_string(H) + " exceeds " + std::to_string(cfg.guardrails.max_height));
    if (d > cfg.guardrails.max_degree)
      throw GuardrailError("degree " + std::to_string(d) + " exceeds " + std::to_string(cfg.guardrails.max_degree));
  }
  Parameters par = choose_parameters(std::max(H, 2L), d);
  if (cfg.k_override) par.k = *cfg.k_override;
  if (cfg.r_override) par.r = *cfg.r_override;
  if (par.k < 1 || par.r < 0) throw PreconditionError("k must be positive and r nonnegative");
  par.regime = par.k < d && cfg.mode != Mode::BruteOnly ? Regime::Certified : Regime::BruteFallback;

  CountReport report;
  report.curve = curve.defining().to_string();
  report.d = d;
  report.H = H;
  report.k = par.k;
  report.r = par.r;
  report.regime = par.regime;
  report.mode = cfg.mode;

  DecompositionCache local;
  DecompositionCache& decs = cache ? *cache : local;

  if (par.regime == Regime::Certified) {
    const auto orbit = symmetry_orbit(curve);
    std::size_t next = 0;
    const long m = mu(par.k);
    BoxCounter counter = [&](const PlaneCurve& image, long h) {
      auto pts = enumerate_rational_points(image, h, Box::unit());
      ImageReport ir;
      // count_via_box visits the orbit in order
      ir.map = next < orbit.size() ? orbit[next].first.name() : "";
      ++next;
      ir.poly = image.defining().to_string();
      ir.box_points = static_cast<long>(pts.size());
      if (m * (par.k + m * image.degree()) > cfg.guardrails.max_wronskian_degree) {
        ir.status = "budget-fallback";
      } else {
        try {
          auto dec = decs.get(image, par.k, par.r);
          certify_image(*dec, pts, ir, report);
          if (ir.map == SymmetryMap{}.name()) report.split_budget = dec->split_points.bezout_budget;
          ir.status = "certified";
        } catch (const PreconditionError& e) {
          ir.status = std::string("precondition-fallback: ") + e.what();
        }
      }
      report.split_points += ir.split_points;
      report.covering_N += ir.covering_N;
      report.images.push_back(std::move(ir));
      return pts;
    };
    report.box_total = count_via_box(curve, H, counter);
    report.total = report.box_total;
    if (std::none_of(report.images.begin(), report.images.end(),
                     [](const ImageReport& ir) { return ir.status == "certified"; }))
      report.regime = Regime::BudgetFallback;
  } else {
    report.total = static_cast<long>(enumerate_rational_points(curve, H).size());
    report.brute_total = report.total;
    report.box_total = cfg.mode == Mode::ExactCount ? count_via_box(curve, H) : report.total;
  }

  if (cfg.mode == Mode::ExactCount) {
    if (!report.brute_total) report.brute_total = static_cast<long>(enumerate_rational_points(curve, H).size());
    if (*report.brute_total != report.total || report.box_total != report.total)
      throw pipeline_failure(curve, "pipeline total differs from enumeration",
                             {{"H", H}, {"total", report.total}, {"brute_total", *report.brute_total}});
  }
  if (H >= 2)
    for (int kappa : cfg.kappa_grid) report.main_bound.emplace_back(kappa, bound_value(d, H, BigRational(1), kappa));
  report.bezout_alternative = static_cast<long>(d) * par.k * report.covering_N;
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

PlaneCurve random_dense_curve(std::uint64_t seed, int d) {
  if (d < 1) throw PreconditionError("degree must be positive");
  std::mt19937_64 rng(seed * 1000003ULL + static_cast<std::uint64_t>(d));
  while (true) {
    BiPoly::Terms t;
    for (int e = 0; e <= d; ++e)
      for (int j = 0; j <= e; ++j) {
        long c = static_cast<long>(rng() % 9) - 4;
        if (c != 0) t.emplace(Monomial{e - j, j}, BigRational(c));
      }
    t[Monomial{d, 0}] = 1;
    try {
      return curve_new(BiPoly(std::move(t)));
    } catch (const PreconditionError&) {
    }
  }
}

std::vector<NamedCurve> make_family(const FamilySpec& spec) {
  std::vector<NamedCurve> out;
  auto add = [&](const BiPoly& p) {
    PlaneCurve c = curve_new(p);
    out.push_back({c.defining().to_string(), c});
  };
  if (spec.kind == "fermat") {
    for (int d = spec.d_min; d <= spec.d_max; ++d)
      add(parse_bipoly("x^" + std::to_string(d) + " + y^" + std::to_string(d) + " - 1"));
  } else if (spec.kind == "random-dense") {
    for (int d = spec.d_min; d <= spec.d_max; ++d)
      for (int i = 0; i < spec.count; ++i) {
        PlaneCurve c = random_dense_curve(spec.seed + static_cast<std::uint64_t>(i), d);
        out.push_back({c.defining().to_string(), c});
      }
  } else if (spec.kind == "circle-like") {
    for (int m = 1; m <= spec.count; ++m) add(parse_bipoly("x^2 + y^2 - " + std::to_string(m)));
  } else if (spec.kind == "file") {
    std::ifstream in(spec.file);
    if (!in) throw PreconditionError("cannot read " + spec.file);
    std::string line;
    while (std::getline(in, line)) {
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      add(parse_bipoly(line));
    }
  } else {
    throw PreconditionError("unknown family: " + spec.kind);
  }
  return out;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct Fit {
  double slope = 0;
  double residual = 0;
};

// Least squares of ys against xs.
std::optional<Fit> fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) mx += xs[i], my += ys[i];
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) sxx += (xs[i] - mx) * (xs[i] - mx), sxy += (xs[i] - mx) * (ys[i] - my);
  if (sxx == 0) return std::nullopt;
  Fit f{sxy / sxx, 0};
  for (std::size_t i = 0; i < n; ++i) {
    double e = ys[i] - (my + f.slope * (xs[i] - mx));
    f.residual += e * e;
  }
  f.residual = std::sqrt(f.residual / static_cast<double>(n));
  return f;
}

}  // namespace

std::string run_family(const std::vector<NamedCurve>& curves, const std::vector<long>& heights,
                       const PipelineConfig& cfg) {
  std::ostringstream csv;
  csv << "#polya-pila v1\n";
  csv << "curve,d,H,k,r,regime,count,scale,ratio,kappa_fit,kappa_residual,status\n";
  std::vector<long> sorted = heights;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& nc : curves) {
    DecompositionCache cache;
    struct Row {
      long H;
      std::string fields;  // d .. ratio
      std::string status;
      double ratio = -1;
    };
    std::vector<Row> rows;
    for (long H : heights) {
      Row row{H, "", "ok"};
      const int d = nc.curve.degree();
      try {
        PipelineConfig c = cfg;
        c.H = H;
        CountReport rep = run_pipeline(nc.curve, c, &cache);
        Enclosure s = bound_value(d, std::max(H, 2L), BigRational(1), 0);
        double scale = (s.lo + s.hi) / 2;
        row.ratio = static_cast<double>(rep.total) / scale;
        row.fields = std::to_string(d) + "," + std::to_string(H) + "," + std::to_string(rep.k) + "," +
                     std::to_string(rep.r) + "," + to_string(rep.regime) + "," + std::to_string(rep.total) + "," +
                     num(scale) + "," + num(row.ratio);
      } catch (const std::exception& e) {
        row.fields = std::to_string(d) + "," + std::to_string(H) + ",,,,,,";
        row.status = std::string("error: ") + e.what();
      }
      rows.push_back(std::move(row));
    }
    // kappa over the three largest heights with a usable ratio
    std::vector<std::pair<long, double>> usable;
    for (const auto& row : rows)
      if (row.status == "ok" && row.H >= 3 && row.ratio > 0) usable.emplace_back(row.H, row.ratio);
    std::sort(usable.begin(), usable.end());
    usable.erase(std::unique(usable.begin(), usable.end(), [](auto& a, auto& b) { return a.first == b.first; }),
                 usable.end());
    if (usable.size() > 3) usable.erase(usable.begin(), usable.end() - 3);
    std::vector<double> xs, ys;
    for (const auto& [H, ratio] : usable) {
      xs.push_back(std::log(std::log(static_cast<double>(H))));
      ys.push_back(std::log(ratio));
    }
    auto fit = fit_line(xs, ys);
    const std::string kappa = fit ? num(fit->slope) + "," + num(fit->residual) : ",";
    for (const auto& row : rows)
      csv << quoted(nc.name) << "," << row.fields << "," << kappa << "," << quoted(row.status) << "\n";
  }
  return csv.str();
}

std::string dgc_demo(const SparsePoly& f, const std::vector<long>& heights) {
  std::ostringstream csv;
  csv << "#polya-pila v1\n";
  csv << "H,direct,slice_sum,ratio,slices\n";
  for (long H : heights) {
    auto c = enumerate_hypersurface_points(f, H);
    std::string slices;
    for (const auto& [v, n] : c.slices) {
      if (!slices.empty()) slices += ";";
      slices += std::to_string(v) + ":" + std::to_string(n);
    }
    csv << H << "," << c.total << "," << c.slice_sum << "," << num(static_cast<double>(c.total) / static_cast<double>(H))
        << "," << slices << "\n";
  }
  return csv.str();
}

}  // namespace polya_pila
