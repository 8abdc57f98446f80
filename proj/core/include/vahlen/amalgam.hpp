#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "vahlen/geometry.hpp"
#include "vahlen/moebius.hpp"

namespace vahlen {

// Membership oracle for the amalgamating subgroup J.  Arbitrary J has an
// intractable word problem at this scale, so exactly two oracles are built
// in; undecided verdicts are first-class and propagate to reports.
struct JOracle {
  enum class Kind { FiniteList, IntegerMatrix };
  Kind kind = Kind::FiniteList;
  // FiniteList: the elements of J up to sign.  IntegerMatrix: matrices with
  // integral scalar entries (the classical 2x2 case); `elements` then holds
  // a generating set used by invariance checks.
  std::vector<Moebius> elements;
};

Cert j_membership(const Moebius& m, const JOracle& oracle, double eps_id = 1e-9);

// Group configuration: two generator lists whose closures share J, plus the
// splitting sphere with its two closed balls B1, B2.
struct GroupSpec {
  int n = 2;
  std::vector<std::pair<std::string, Moebius>> gens1;
  std::vector<std::pair<std::string, Moebius>> gens2;
  JOracle j;
  BallPair sphere;

  const std::vector<std::pair<std::string, Moebius>>& gens(int factor) const {
    return factor == 1 ? gens1 : gens2;
  }
};

// One symbol of a generator word: index into the factor's generator list,
// possibly inverted.
struct GenRef {
  int index = 0;
  bool inverse = false;
};

// A letter of a normal form: an element of G_m - J carried as a generator
// word with its cached matrix.
struct Letter {
  int factor = 1;  // 1 or 2
  std::vector<GenRef> word;
  Moebius mat;
};

std::string letter_label(const GroupSpec& spec, const Letter& l);

// Alternating word over (G1-J) and (G2-J) letters, stored in written order:
// letters.front() is applied last, letters.back() first.
struct NormalForm {
  std::vector<Letter> letters;
  Moebius value;  // cached product of the letter matrices in written order

  int length() const { return static_cast<int>(letters.size()); }
  std::string label(const GroupSpec& spec) const;
};

Moebius phi(const NormalForm& w);  // recomputes the product

struct FormType {
  int m = 0;     // factor of the leftmost letter (applied last)
  int k = 0;     // factor of the rightmost letter (applied first)
  bool positive = false;  // k == 1
};
FormType form_type(const NormalForm& w);

// Result of normal-form multiplication: a normal form, an element of J, or
// an undecided contraction (oracle could not classify a merged letter).
struct MultiplyResult {
  enum class Kind { Form, JElement, Undecided };
  Kind kind = Kind::Undecided;
  NormalForm form;
  Moebius j_element;
};

MultiplyResult multiply(const NormalForm& u, const NormalForm& v, const JOracle& oracle,
                        double eps_id = 1e-9);

struct EnumConfig {
  int letter_depth = 2;          // generator-word length bound per letter
  double eps_id = 1e-9;
  long node_budget = 2'000'000;  // enumeration nodes before truncation
};

// The letters available for one factor: breadth-first generator words up to
// letter_depth, deduplicated projectively, with J members removed.
// transversal indexes one representative per right coset gJ.
struct LetterPool {
  std::vector<Letter> letters;          // canonical (shortest-lex) order
  std::vector<int> transversal;
  std::vector<Moebius> j_members;       // words that landed in J (identity first)
  bool truncated = false;
  bool oracle_undecided = false;
};

LetterPool build_letter_pool(const GroupSpec& spec, int factor, const EnumConfig& cfg);

// Closure of one factor group under multiplication, up to a word-length
// budget; `closed` reports that a BFS level added nothing new, i.e. the
// whole finite group was found.
struct FactorClosure {
  std::vector<std::pair<std::string, Moebius>> elements;
  bool closed = false;
};
FactorClosure enumerate_factor_group(const GroupSpec& spec, int factor, int depth,
                                     double eps_id = 1e-9);

struct Enumeration {
  std::vector<NormalForm> forms;  // breadth-first by length, deterministic
  bool truncated = false;
};

// One representative per equivalence class of normal forms of length <= L:
// all letters except the rightmost are coset-transversal representatives,
// the rightmost ranges over the letter pool; projective matrix collisions
// are removed (first representative kept).
Enumeration enumerate_normal_forms(const GroupSpec& spec, int max_len, const EnumConfig& cfg);

// Streaming variant in the same canonical order, without deduplication or
// materialization.  The callback returns false to stop early.
struct StreamStats {
  bool truncated = false;
  long visited = 0;
};
StreamStats for_each_normal_form(const GroupSpec& spec, int max_len, const EnumConfig& cfg,
                                 const std::function<bool(const NormalForm&)>& fn);

enum class CosetSide { G1, G2, G };

// One J-coset representative: its canonical word, cached matrix, length
// (syllables for side G, generator symbols for a factor side) and the
// positive/negative sign (rightmost letter in G1 - J).
struct CosetEntry {
  std::string word;
  Moebius value;
  int length = 0;
  bool positive = false;
};

struct CosetTable {
  CosetSide side = CosetSide::G;
  std::vector<CosetEntry> entries;  // identity coset omitted
  bool truncated = false;
  bool oracle_undecided = false;
};

// Coset representatives of J in G1, G2 or in G = <G1, G2>.  For the factor
// sides, max_len bounds the generator-word length; for side G it bounds the
// syllable length of the transversal normal forms.
CosetTable enumerate_cosets(const GroupSpec& spec, CosetSide side, int max_len,
                            const EnumConfig& cfg);

struct KernelSearchResult {
  std::optional<NormalForm> witness;
  bool truncated = false;
};

// First enumerated normal form w with phi(w) within eps of +-identity.
KernelSearchResult kernel_search(const GroupSpec& spec, int max_len, double eps,
                                 const EnumConfig& cfg);

// Parse a label previously produced by NormalForm::label / letter_label.
Moebius parse_element_label(const GroupSpec& spec, const std::string& label);

}  // namespace vahlen
