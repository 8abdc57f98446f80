#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "vahlen/amalgam.hpp"

namespace vahlen {

using ordered_json = nlohmann::ordered_json;

// Every threshold used by the checks lives here and is echoed into every
// report, so a report replays from its own config.
struct CheckConfig {
  int max_length = 8;         // syllable bound for amalgam enumerations
  int letter_depth = 2;       // generator-word bound per normal-form letter
  double eps_id = 1e-9;       // projective identity / dedup tolerance
  double delta_geo = 1e-9;    // tolerance band of the geometric predicates
  int samples = 100;          // sample counts for sampled checks
  long node_budget = 2'000'000;
  std::vector<double> peak_grid = {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 1024.0};
  int conjugator_depth = 3;   // parabolic harvesting depth inside J
  int translation_depth = 8;  // product depth for Bieberbach rank detection
  int nesting_depth = 5;
  std::uint64_t rng_seed = 20260801ull;

  EnumConfig enum_config() const {
    EnumConfig e;
    e.letter_depth = letter_depth;
    e.eps_id = eps_id;
    e.node_budget = node_budget;
    return e;
  }
};

ordered_json config_echo(const CheckConfig& cfg);

enum class Verdict { Pass, Fail, Marginal, Undecided, Truncated };
std::string to_string(Verdict v);
Verdict combine(Verdict a, Verdict b);  // Fail > Undecided > Marginal > Truncated > Pass

struct CheckResult {
  std::string check;
  Verdict verdict = Verdict::Undecided;
  ordered_json witness = ordered_json::object();
  ordered_json series = ordered_json::array();
  std::string note;
};

// ---- hypothesis checks -------------------------------------------------

// B_m interior precisely invariant under J in G_m: J words fix the sphere
// and its sides exactly; coset representatives of G_m - J up to max_length
// move the open ball off itself.
CheckResult check_precisely_invariant(const GroupSpec& spec, int side_m, const CheckConfig& cfg);

// Desk-scale block conditions for B_m: precise invariance plus, for every
// harvested parabolic fixed point of J of rank < n, a grid threshold whose
// peak domain misses S.
CheckResult check_block(const GroupSpec& spec, int side_m, const CheckConfig& cfg);

// Precise invariance on both sides plus direct containment
// g(B_m) inside B_{3-m} for every representative.
CheckResult check_interactive_pair(const GroupSpec& spec, const CheckConfig& cfg);

// Searches for a point of one open ball outside every orbit image of the
// other; pass carries the witness point, failure is never reported (the
// union is infinite), only undecided.
CheckResult check_proper(const GroupSpec& spec, const CheckConfig& cfg);

// ---- conclusion witnesses ----------------------------------------------

enum class DecayObject { SphereS, BallBm };

// Max chordal diameter of the image of S (or B_m) over coset
// representatives, per word length.
CheckResult diameter_decay(const GroupSpec& spec, CosetSide side, DecayObject object,
                           const CheckConfig& cfg);

// Nested sphere translates (phi(w))^k(S), k = 1..k_max around the
// attracting fixed point of the loxodromic phi(w).
CheckResult nesting_witness(const GroupSpec& spec, const NormalForm& w, int k_max,
                            const CheckConfig& cfg);
CheckResult nesting_witness(const GroupSpec& spec, const std::string& word_label,
                            const Moebius& value, int k_max, const CheckConfig& cfg);

// Minimum projective distance to the identity over the bounded enumeration;
// a witness, not a proof.
CheckResult discreteness_witness(const GroupSpec& spec, const CheckConfig& cfg);

// Isometric sphere radii per word length; non-increasing trend beyond
// length 2 is the desk-scale echo of the asymptotic radii decay.
CheckResult radii_decay(const GroupSpec& spec, const CheckConfig& cfg);

// Classify every enumerated element; parabolic elements get a bounded
// conjugacy search towards the factors and the J-parabolic points.
CheckResult classification_survey(const GroupSpec& spec, const CheckConfig& cfg);

// Kernel search surfaced as a check: pass = no witness, fail = witness.
CheckResult check_freeness(const GroupSpec& spec, const CheckConfig& cfg);

// ---- suite ---------------------------------------------------------------

struct SuiteReport {
  std::string name;
  CheckConfig config;
  std::vector<CheckResult> checks;
  bool any_fail() const;
};

SuiteReport run_suite(const GroupSpec& spec, const CheckConfig& cfg, const std::string& name);

// Stable machine-readable rendering, schema "report_v1".
ordered_json report_json(const SuiteReport& report);

// Parabolic fixed points of J harvested from generators and short
// conjugates, with the translation rank of their stabilizer samples.
struct ParabolicPoint {
  Point z;
  Moebius conjugator;  // maps z to infinity
  int rank = 0;
};
std::vector<ParabolicPoint> harvest_j_parabolics(const GroupSpec& spec, const CheckConfig& cfg);

}  // namespace vahlen
