#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "polya_pila/interpolation.hpp"
#include "polya_pila/points.hpp"
#include "polya_pila/strata.hpp"

namespace polya_pila {

enum class Regime { Certified, BruteFallback, BudgetFallback };
enum class Mode { ExactCount, CertifyOnly, BruteOnly };

std::string to_string(Regime r);
std::string to_string(Mode m);
Mode mode_from_string(const std::string& s);

struct Parameters {
  int k = 0;
  int r = 0;
  Regime regime = Regime::BruteFallback;
};

/// k = max(2, ceil(ln H)), r = mu(k), certified iff k < d. Requires H >= 2, d >= 1.
Parameters choose_parameters(long H, int d);

struct Enclosure {
  double lo = 0;
  double hi = 0;
};

/// c * d^2 * H^(2/d) * (ln H)^kappa, enclosed with directed rounding. Requires H >= 2.
Enclosure bound_value(int d, long H, const BigRational& c, int kappa);

struct Guardrails {
  int max_degree = 12;
  long max_height = 1000;            // rational points
  long max_integral_height = 100000;
  long max_wronskian_degree = 200;   // images whose bound mu(k)(k + mu(k) d) exceeds this are enumerated
};

struct PipelineConfig {
  long H = 2;
  std::optional<int> k_override;
  std::optional<int> r_override;
  Mode mode = Mode::ExactCount;
  Guardrails guardrails;
  bool force = false;  // skip the degree and height guardrails
  std::vector<int> kappa_grid{0, 1, 2};
};

/// Reads the PipelineConfig fields present in `j`, keeping `base` for the rest.
PipelineConfig config_from_json(const nlohmann::json& j, PipelineConfig base = {});

/// Decompositions keyed by (defining polynomial, k, r); shared across heights in a family run.
class DecompositionCache {
 public:
  std::shared_ptr<const ArcDecomposition> get(const PlaneCurve& curve, int k, int r);

 private:
  std::map<std::tuple<std::string, int, int>, std::shared_ptr<const ArcDecomposition>> store_;
};

/// One symmetry image of the curve and how its unit-square points were counted.
struct ImageReport {
  std::string map;
  std::string poly;
  std::string status;  // "certified", "budget-fallback" or "precondition-fallback: ..."
  long box_points = 0;
  long split_points = 0;
  long arcs = 0;
  long covering_N = 0;
  int max_arc_intersections = 0;
};

struct CountReport {
  std::string curve;
  int d = 0;
  long H = 0;
  int k = 0;
  int r = 0;
  Regime regime = Regime::BruteFallback;
  Mode mode = Mode::ExactCount;
  std::optional<long> brute_total;
  long total = 0;
  long box_total = 0;
  long split_points = 0;
  std::vector<int> per_arc;  // points on each arc of the curve's own unit-square decomposition
  long covering_N = 0;
  long certificates = 0;
  std::vector<std::pair<int, Enclosure>> main_bound;  // (kappa, c = 1 enclosure)
  long bezout_alternative = 0;                        // d * k * covering_N
  long split_budget = 0;
  std::vector<ImageReport> images;
  double seconds = 0;
};

nlohmann::json to_json(const CountReport& r);

/// Counts #Gamma(Q, H). Certified regime: each symmetry image's unit-square points are located
/// on arcs, covered by degree-k curves and every covering curve is certified against every arc;
/// split points are counted separately. Throws GuardrailError, PreconditionError, or
/// CertificateError (also on a mismatch with enumeration in exact-count mode).
CountReport run_pipeline(const PlaneCurve& curve, const PipelineConfig& cfg, DecompositionCache* cache = nullptr);

struct NamedCurve {
  std::string name;
  PlaneCurve curve;
};

/// Dense curve of degree d with coefficients in [-4, 4], deterministic in (seed, d).
PlaneCurve random_dense_curve(std::uint64_t seed, int d);

struct FamilySpec {
  std::string kind;  // "fermat", "random-dense", "circle-like", "file"
  int d_min = 3;
  int d_max = 3;
  int count = 3;
  std::uint64_t seed = 7;
  std::string file;  // one curve per line for kind "file"
};

std::vector<NamedCurve> make_family(const FamilySpec& spec);

/// CSV with a "#polya-pila v1" header line, one row per (curve, H); failures become rows with
/// an error status. kappa_fit is the least-squares slope of ln(ratio) against ln ln H over the
/// three largest heights.
std::string run_family(const std::vector<NamedCurve>& curves, const std::vector<long>& heights,
                       const PipelineConfig& cfg);

/// Direct and slice-sum integer point counts of {f = 0} in [-H, H]^3, one row per H.
std::string dgc_demo(const SparsePoly& f, const std::vector<long>& heights);

}  // namespace polya_pila
