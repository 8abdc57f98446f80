#include "vahlen/amalgam.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace vahlen {

namespace {

bool entry_integral(const Clifford& e, double tol, double& worst) {
  for (int m = 0; m < e.blade_count(); ++m) {
    double c = e.coeff(static_cast<unsigned>(m));
    double err = (m == 0) ? std::fabs(c - std::round(c)) : std::fabs(c);
    worst = std::max(worst, err);
  }
  return worst <= tol;
}

}  // namespace

Cert j_membership(const Moebius& m, const JOracle& oracle, double eps_id) {
  if (oracle.kind == JOracle::Kind::FiniteList) {
    double best = 1e300;
    for (const Moebius& e : oracle.elements) {
      if (m.dim() != e.dim()) continue;
      if (m.projectively_equal(e, eps_id)) return Cert::Yes;
      // track near misses for the marginal band
      Moebius diff = m;  // projectively_equal already handles signs; recompute distance
      double d = 1e300;
      for (double sign : {1.0, -1.0}) {
        double acc = std::sqrt((m.a() - e.a() * sign).norm_sq() + (m.b() - e.b() * sign).norm_sq() +
                               (m.c() - e.c() * sign).norm_sq() + (m.d() - e.d() * sign).norm_sq());
        d = std::min(d, acc);
      }
      best = std::min(best, d);
    }
    double scale = 1.0 + m.frobenius_norm();
    if (best <= 10.0 * eps_id * scale) return Cert::Marginal;
    return Cert::No;
  }
  // IntegerMatrix: scalar-blade entries within eps of integers.
  double worst = 0.0;
  entry_integral(m.a(), eps_id, worst);
  entry_integral(m.b(), eps_id, worst);
  entry_integral(m.c(), eps_id, worst);
  entry_integral(m.d(), eps_id, worst);
  if (worst <= eps_id) return Cert::Yes;
  if (worst <= 1e-6) return Cert::Marginal;
  return Cert::No;
}

std::string letter_label(const GroupSpec& spec, const Letter& l) {
  std::ostringstream os;
  const auto& gens = spec.gens(l.factor);
  for (size_t i = 0; i < l.word.size(); ++i) {
    if (i) os << "*";
    if (l.word[i].index < 0) {
      os << "(j)";  // a J factor absorbed during contraction
      continue;
    }
    os << gens[static_cast<size_t>(l.word[i].index)].first;
    if (l.word[i].inverse) os << "^-1";
  }
  return os.str();
}

std::string NormalForm::label(const GroupSpec& spec) const {
  std::ostringstream os;
  for (size_t i = 0; i < letters.size(); ++i) {
    if (i) os << " ";
    os << letter_label(spec, letters[i]);
  }
  return os.str();
}

Moebius phi(const NormalForm& w) {
  if (w.letters.empty()) throw std::invalid_argument("empty normal form");
  Moebius p = w.letters.front().mat;
  for (size_t i = 1; i < w.letters.size(); ++i) p = p.compose(w.letters[i].mat);
  return p;
}

FormType form_type(const NormalForm& w) {
  if (w.letters.empty()) throw std::invalid_argument("empty normal form");
  FormType t;
  t.m = w.letters.front().factor;
  t.k = w.letters.back().factor;
  t.positive = (t.k == 1);
  return t;
}

namespace {

Letter merge_letters(const Letter& a, const Letter& b) {
  Letter out;
  out.factor = a.factor;
  out.word = a.word;
  out.word.insert(out.word.end(), b.word.begin(), b.word.end());
  out.mat = a.mat.compose(b.mat);
  return out;
}

Letter absorb_right(const Letter& a, const Moebius& j) {
  Letter out = a;
  out.mat = a.mat.compose(j);
  out.word.push_back(GenRef{-1, false});  // marks an absorbed J factor
  return out;
}

Letter absorb_left(const Moebius& j, const Letter& a) {
  Letter out = a;
  out.mat = j.compose(a.mat);
  out.word.insert(out.word.begin(), GenRef{-1, false});
  return out;
}

}  // namespace

MultiplyResult multiply(const NormalForm& u, const NormalForm& v, const JOracle& oracle,
                        double eps_id) {
  std::vector<Letter> letters = u.letters;
  letters.insert(letters.end(), v.letters.begin(), v.letters.end());
  MultiplyResult res;
  while (true) {
    size_t pos = letters.size();
    for (size_t i = 0; i + 1 < letters.size(); ++i)
      if (letters[i].factor == letters[i + 1].factor) {
        pos = i;
        break;
      }
    if (pos == letters.size()) break;
    Letter merged = merge_letters(letters[pos], letters[pos + 1]);
    Cert c = j_membership(merged.mat, oracle, eps_id);
    if (c == Cert::Marginal) {
      res.kind = MultiplyResult::Kind::Undecided;
      return res;
    }
    if (c == Cert::No) {
      letters[pos] = merged;
      letters.erase(letters.begin() + static_cast<long>(pos) + 1);
      continue;
    }
    // merged landed in J: absorb it into a neighbour
    Moebius j = merged.mat;
    letters.erase(letters.begin() + static_cast<long>(pos),
                  letters.begin() + static_cast<long>(pos) + 2);
    if (letters.empty()) {
      res.kind = MultiplyResult::Kind::JElement;
      res.j_element = j;
      return res;
    }
    if (pos > 0)
      letters[pos - 1] = absorb_right(letters[pos - 1], j);
    else
      letters[0] = absorb_left(j, letters[0]);
  }
  res.kind = MultiplyResult::Kind::Form;
  res.form.letters = std::move(letters);
  res.form.value = phi(res.form);
  return res;
}

namespace {

// Sorted-by-norm index for projective deduplication: collisions have equal
// Frobenius norms, so only a thin window ever needs exact comparison.
class ProjectiveDedup {
public:
  explicit ProjectiveDedup(double eps) : eps_(eps) {}

  bool insert(const Moebius& m) {
    double key = m.frobenius_norm();
    double band = eps_ * (1.0 + key);
    auto lo = index_.lower_bound(key - band);
    auto hi = index_.upper_bound(key + band);
    for (auto it = lo; it != hi; ++it)
      if (it->second.projectively_equal(m, eps_)) return false;
    index_.emplace(key, m);
    return true;
  }

private:
  double eps_;
  std::multimap<double, Moebius> index_;
};

struct PoolBuilder {
  const GroupSpec& spec;
  int factor;
  const EnumConfig& cfg;
  long nodes = 0;

  struct Word {
    std::vector<GenRef> word;
    Moebius mat;
  };

  // breadth-first words over the factor generators, projective dedup
  std::vector<Word> run(bool& truncated, bool& closed) {
    const auto& gens = spec.gens(factor);
    std::vector<Word> all;
    ProjectiveDedup dedup(cfg.eps_id);
    all.push_back(Word{{}, Moebius::identity(spec.n)});
    dedup.insert(all.front().mat);
    size_t level_begin = 0;
    closed = false;
    for (int depth = 1; depth <= cfg.letter_depth; ++depth) {
      size_t level_end = all.size();
      bool grew = false;
      for (size_t w = level_begin; w < level_end; ++w) {
        for (size_t gi = 0; gi < gens.size(); ++gi) {
          for (bool inv : {false, true}) {
            if (++nodes > cfg.node_budget) {
              truncated = true;
              return all;
            }
            Moebius m = inv ? all[w].mat.compose(gens[gi].second.inverse())
                            : all[w].mat.compose(gens[gi].second);
            if (!dedup.insert(m)) continue;
            Word nw;
            nw.word = all[w].word;
            nw.word.push_back(GenRef{static_cast<int>(gi), inv});
            nw.mat = m;
            all.push_back(std::move(nw));
            grew = true;
          }
        }
      }
      level_begin = level_end;
      if (!grew) {
        closed = true;
        break;
      }
    }
    return all;
  }
};

}  // namespace

LetterPool build_letter_pool(const GroupSpec& spec, int factor, const EnumConfig& cfg) {
  LetterPool pool;
  bool closed = false;
  PoolBuilder b{spec, factor, cfg};
  auto words = b.run(pool.truncated, closed);
  for (const auto& w : words) {
    if (w.word.empty()) {
      pool.j_members.push_back(w.mat);  // identity
      continue;
    }
    Cert c = j_membership(w.mat, spec.j, cfg.eps_id);
    if (c == Cert::Yes) {
      pool.j_members.push_back(w.mat);
      continue;
    }
    if (c == Cert::Marginal) pool.oracle_undecided = true;
    Letter l;
    l.factor = factor;
    l.word = w.word;
    l.mat = w.mat;
    pool.letters.push_back(std::move(l));
  }
  // transversal: first letter of each right coset gJ in canonical order
  for (size_t i = 0; i < pool.letters.size(); ++i) {
    bool fresh = true;
    for (int t : pool.transversal) {
      Moebius rel = pool.letters[static_cast<size_t>(t)].mat.inverse().compose(pool.letters[i].mat);
      Cert c = j_membership(rel, spec.j, cfg.eps_id);
      if (c == Cert::Yes) {
        fresh = false;
        break;
      }
      if (c == Cert::Marginal) pool.oracle_undecided = true;  // retained, flagged
    }
    if (fresh) pool.transversal.push_back(static_cast<int>(i));
  }
  return pool;
}

FactorClosure enumerate_factor_group(const GroupSpec& spec, int factor, int depth,
                                     double eps_id) {
  EnumConfig cfg;
  cfg.letter_depth = depth;
  cfg.eps_id = eps_id;
  FactorClosure out;
  bool truncated = false;
  PoolBuilder b{spec, factor, cfg};
  auto words = b.run(truncated, out.closed);
  for (const auto& w : words) {
    Letter l;
    l.factor = factor;
    l.word = w.word;
    l.mat = w.mat;
    out.elements.emplace_back(w.word.empty() ? "id" : letter_label(spec, l), w.mat);
  }
  if (truncated) out.closed = false;
  return out;
}

namespace {

// Canonical-order traversal of the transversal-prefix sequences; callback
// returns false to stop.  Shared by the materializing and the streaming
// front ends.
void visit_normal_forms(const GroupSpec& spec, int max_len, const EnumConfig& cfg,
                        StreamStats& stats,
                        const std::function<bool(std::vector<Letter>&, const Moebius&)>& fn) {
  LetterPool pool[3];
  pool[1] = build_letter_pool(spec, 1, cfg);
  pool[2] = build_letter_pool(spec, 2, cfg);
  stats.truncated = pool[1].truncated || pool[2].truncated;

  for (int len = 1; len <= max_len && !stats.truncated; ++len) {
    for (int first_factor : {1, 2}) {
      std::vector<int> choice(static_cast<size_t>(len), 0);
      std::vector<Letter> letters;
      std::vector<Moebius> prefix;  // prefix[i] = product of letters[0..i]

      auto factor_at = [&](int pos) { return (pos % 2 == 0) ? first_factor : 3 - first_factor; };
      auto options_at = [&](int pos) -> int {
        int f = factor_at(pos);
        return pos + 1 < len ? static_cast<int>(pool[f].transversal.size())
                             : static_cast<int>(pool[f].letters.size());
      };
      auto letter_at = [&](int pos, int opt) -> const Letter& {
        int f = factor_at(pos);
        if (pos + 1 < len) return pool[f].letters[static_cast<size_t>(pool[f].transversal[static_cast<size_t>(opt)])];
        return pool[f].letters[static_cast<size_t>(opt)];
      };

      int pos = 0;
      if (options_at(0) == 0) continue;
      while (pos >= 0) {
        if (stats.visited++ > cfg.node_budget) {
          stats.truncated = true;
          break;
        }
        if (choice[static_cast<size_t>(pos)] >= options_at(pos)) {
          choice[static_cast<size_t>(pos)] = 0;
          --pos;
          if (pos >= 0) {
            letters.resize(static_cast<size_t>(pos));
            prefix.resize(static_cast<size_t>(pos));
            ++choice[static_cast<size_t>(pos)];
          }
          continue;
        }
        const Letter& l = letter_at(pos, choice[static_cast<size_t>(pos)]);
        letters.resize(static_cast<size_t>(pos));
        prefix.resize(static_cast<size_t>(pos));
        letters.push_back(l);
        prefix.push_back(pos == 0 ? l.mat : prefix[static_cast<size_t>(pos) - 1].compose(l.mat));
        if (pos + 1 == len) {
          if (!fn(letters, prefix.back())) return;
          ++choice[static_cast<size_t>(pos)];
        } else {
          ++pos;
        }
      }
      if (stats.truncated) break;
    }
  }
}

}  // namespace

Enumeration enumerate_normal_forms(const GroupSpec& spec, int max_len, const EnumConfig& cfg) {
  Enumeration out;
  ProjectiveDedup dedup(cfg.eps_id);
  StreamStats stats;
  visit_normal_forms(spec, max_len, cfg, stats,
                     [&](std::vector<Letter>& letters, const Moebius& value) {
                       if (dedup.insert(value)) {
                         NormalForm nf;
                         nf.letters = letters;
                         nf.value = value;
                         out.forms.push_back(std::move(nf));
                       }
                       return true;
                     });
  out.truncated = stats.truncated;
  return out;
}

StreamStats for_each_normal_form(const GroupSpec& spec, int max_len, const EnumConfig& cfg,
                                 const std::function<bool(const NormalForm&)>& fn) {
  StreamStats stats;
  NormalForm scratch;
  visit_normal_forms(spec, max_len, cfg, stats,
                     [&](std::vector<Letter>& letters, const Moebius& value) {
                       scratch.letters = letters;
                       scratch.value = value;
                       return fn(scratch);
                     });
  return stats;
}

CosetTable enumerate_cosets(const GroupSpec& spec, CosetSide side, int max_len,
                            const EnumConfig& cfg) {
  CosetTable table;
  table.side = side;
  if (side != CosetSide::G) {
    int factor = (side == CosetSide::G1) ? 1 : 2;
    EnumConfig fc = cfg;
    fc.letter_depth = max_len;
    LetterPool pool = build_letter_pool(spec, factor, fc);
    table.truncated = pool.truncated;
    table.oracle_undecided = pool.oracle_undecided;
    for (int t : pool.transversal) {
      const Letter& l = pool.letters[static_cast<size_t>(t)];
      CosetEntry e;
      e.word = letter_label(spec, l);
      e.value = l.mat;
      e.length = static_cast<int>(l.word.size());
      e.positive = (factor == 1);
      table.entries.push_back(std::move(e));
    }
    return table;
  }

  LetterPool pool[3];
  pool[1] = build_letter_pool(spec, 1, cfg);
  pool[2] = build_letter_pool(spec, 2, cfg);
  table.truncated = pool[1].truncated || pool[2].truncated;
  table.oracle_undecided = pool[1].oracle_undecided || pool[2].oracle_undecided;

  ProjectiveDedup dedup(cfg.eps_id);
  long nodes = 0;
  for (int len = 1; len <= max_len && !table.truncated; ++len) {
    for (int first_factor : {1, 2}) {
      std::vector<int> choice(static_cast<size_t>(len), 0);
      std::vector<Letter> letters;
      std::vector<Moebius> prefix;
      auto factor_at = [&](int pos) { return (pos % 2 == 0) ? first_factor : 3 - first_factor; };
      auto options_at = [&](int pos) {
        return static_cast<int>(pool[factor_at(pos)].transversal.size());
      };
      auto letter_at = [&](int pos, int opt) -> const Letter& {
        const LetterPool& p = pool[factor_at(pos)];
        return p.letters[static_cast<size_t>(p.transversal[static_cast<size_t>(opt)])];
      };
      int pos = 0;
      if (options_at(0) == 0) continue;
      while (pos >= 0) {
        if (nodes++ > cfg.node_budget) {
          table.truncated = true;
          break;
        }
        if (choice[static_cast<size_t>(pos)] >= options_at(pos)) {
          choice[static_cast<size_t>(pos)] = 0;
          --pos;
          if (pos >= 0) {
            letters.resize(static_cast<size_t>(pos));
            prefix.resize(static_cast<size_t>(pos));
            ++choice[static_cast<size_t>(pos)];
          }
          continue;
        }
        const Letter& l = letter_at(pos, choice[static_cast<size_t>(pos)]);
        letters.resize(static_cast<size_t>(pos));
        prefix.resize(static_cast<size_t>(pos));
        letters.push_back(l);
        prefix.push_back(pos == 0 ? l.mat : prefix[static_cast<size_t>(pos) - 1].compose(l.mat));
        if (pos + 1 == len) {
          if (dedup.insert(prefix.back())) {
            CosetEntry e;
            std::ostringstream os;
            for (size_t i = 0; i < letters.size(); ++i) {
              if (i) os << " ";
              os << letter_label(spec, letters[i]);
            }
            e.word = os.str();
            e.value = prefix.back();
            e.length = len;
            e.positive = (letters.back().factor == 1);
            table.entries.push_back(std::move(e));
          }
          ++choice[static_cast<size_t>(pos)];
        } else {
          ++pos;
        }
      }
      if (table.truncated) break;
    }
  }
  return table;
}

KernelSearchResult kernel_search(const GroupSpec& spec, int max_len, double eps,
                                 const EnumConfig& cfg) {
  KernelSearchResult res;
  StreamStats stats = for_each_normal_form(spec, max_len, cfg, [&](const NormalForm& w) {
    if (w.value.distance_to_identity() < eps) {
      res.witness = w;
      return false;
    }
    return true;
  });
  res.truncated = !res.witness && stats.truncated;
  return res;
}

Moebius parse_element_label(const GroupSpec& spec, const std::string& label) {
  Moebius out = Moebius::identity(spec.n);
  std::istringstream words(label);
  std::string syllable;
  bool any = false;
  while (words >> syllable) {
    std::string token;
    std::istringstream toks(syllable);
    while (std::getline(toks, token, '*')) {
      bool inv = false;
      if (token.size() > 3 && token.substr(token.size() - 3) == "^-1") {
        inv = true;
        token = token.substr(0, token.size() - 3);
      }
      const Moebius* m = nullptr;
      for (const auto& [name, mat] : spec.gens1)
        if (name == token) m = &mat;
      if (!m)
        for (const auto& [name, mat] : spec.gens2)
          if (name == token) m = &mat;
      if (!m) throw std::invalid_argument("unknown generator in label: " + token);
      out = out.compose(inv ? m->inverse() : *m);
      any = true;
    }
  }
  if (!any) throw std::invalid_argument("empty element label");
  return out;
}

}  // namespace vahlen
