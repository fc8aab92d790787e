#pragma once

#include <cstddef>
#include <cstdlib>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "relation.hpp"

namespace qu {

/// Size limits for everything that enumerates 2^n objects.
struct Caps {
  std::size_t ground = 16;         ///< points in an ingested or generated space
  std::size_t lift = 10;           ///< points of a space whose hyperspace / stability space is materialized
  std::size_t family_log2 = 12;    ///< Cauchy-family enumeration limit (2^family_log2 families)

  /// Parses "ground=16,lift=10,family=12" on top of `base`; unknown keys throw.
  static Caps parse(const std::string& spec, Caps base);
  static Caps parse(const std::string& spec) { return parse(spec, Caps{}); }

  /// Defaults overridden by the QU_CAPS environment variable, if set.
  static Caps from_env() {
    const char* v = std::getenv("QU_CAPS");
    return v ? parse(v) : Caps{};
  }

  std::string to_string() const {
    return "ground=" + std::to_string(ground) + ",lift=" + std::to_string(lift) +
           ",family=" + std::to_string(family_log2);
  }
};

inline Caps Caps::parse(const std::string& spec, Caps base) {
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw error("caps: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    std::size_t value = 0;
    try {
      value = std::stoul(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw error("caps: value for '" + key + "' is not an integer");
    }
    if (key == "ground") base.ground = value;
    else if (key == "lift") base.lift = value;
    else if (key == "family") base.family_log2 = value;
    else throw error("caps: unknown key '" + key + "'");
  }
  if (base.ground == 0 || base.ground > 62) throw error("caps: ground must be in 1..62");
  if (base.lift == 0 || base.lift > 12) throw error("caps: lift must be in 1..12");
  if (base.family_log2 > 24) throw error("caps: family must be at most 24");
  return base;
}

class cap_exceeded : public error {
 public:
  using error::error;
};

struct GroundSet {
  std::size_t size = 0;
  std::vector<std::string> labels;  ///< empty, or exactly `size` distinct names

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

  std::string label(std::size_t i) const { return labels.empty() ? std::to_string(i + 1) : labels.at(i); }
};

enum class IssueKind { empty_ground, bad_labels, empty_base, size_mismatch, non_reflexive, non_transitive_min, cap_exceeded };

inline const char* to_string(IssueKind k) {
  switch (k) {
    case IssueKind::empty_ground: return "empty-ground";
    case IssueKind::bad_labels: return "bad-labels";
    case IssueKind::empty_base: return "empty-base";
    case IssueKind::size_mismatch: return "size-mismatch";
    case IssueKind::non_reflexive: return "non-reflexive";
    case IssueKind::non_transitive_min: return "non-transitive";
    case IssueKind::cap_exceeded: return "cap-exceeded";
  }
  return "unknown";
}

struct ValidationIssue {
  IssueKind kind;
  std::optional<std::size_t> base_index;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  std::vector<std::size_t> reflexive_repairs;  ///< base indices whose diagonal was completed

  bool valid() const { return issues.empty(); }
  bool has(IssueKind k) const {
    for (const auto& i : issues)
      if (i.kind == k) return true;
    return false;
  }
  std::string summary() const {
    if (valid()) return "valid";
    std::string s;
    for (const auto& i : issues) {
      if (!s.empty()) s += "; ";
      s += to_string(i.kind);
      if (i.base_index) s += " (relation " + std::to_string(*i.base_index + 1) + ")";
      if (!i.detail.empty()) s += ": " + i.detail;
    }
    return s;
  }
};

struct ValidateOptions {
  bool repair_reflexive = false;
  std::optional<std::size_t> max_points;  ///< ingestion cap; internal constructions leave it unset
};

/// Checks the finite quasi-uniformity axioms for a base. With
/// `repair_reflexive`, missing diagonals are filled in `base` and noted
/// instead of reported as issues.
inline ValidationReport validate(const GroundSet& ground, std::vector<Relation>& base,
                                 const ValidateOptions& opt = {}) {
  ValidationReport rep;
  if (ground.size == 0) rep.issues.push_back({IssueKind::empty_ground, std::nullopt, "ground set has no points"});
  if (opt.max_points && ground.size > *opt.max_points)
    rep.issues.push_back({IssueKind::cap_exceeded, std::nullopt,
                          std::to_string(ground.size) + " points exceeds cap " + std::to_string(*opt.max_points)});
  if (!ground.labels.empty()) {
    std::set<std::string> distinct(ground.labels.begin(), ground.labels.end());
    if (ground.labels.size() != ground.size || distinct.size() != ground.labels.size())
      rep.issues.push_back({IssueKind::bad_labels, std::nullopt, "labels must be distinct, one per point"});
  }
  if (base.empty()) rep.issues.push_back({IssueKind::empty_base, std::nullopt, "base has no relations"});
  if (!rep.valid()) return rep;

  for (std::size_t k = 0; k < base.size(); ++k) {
    if (base[k].size() != ground.size) {
      rep.issues.push_back({IssueKind::size_mismatch, k, "relation is over " + std::to_string(base[k].size()) + " points"});
      continue;
    }
    if (!base[k].is_reflexive()) {
      if (opt.repair_reflexive) {
        base[k] = base[k].reflexive_closure();
        rep.reflexive_repairs.push_back(k);
      } else {
        rep.issues.push_back({IssueKind::non_reflexive, k,
                              "missing (" + std::to_string(base[k].first_irreflexive_point() + 1) + "," +
                                  std::to_string(base[k].first_irreflexive_point() + 1) + ")"});
      }
    }
  }
  if (!rep.valid()) return rep;

  Relation m = base.front();
  for (std::size_t k = 1; k < base.size(); ++k) m = m & base[k];
  const Relation sq = compose(m, m);
  for (std::size_t x = 0; x < ground.size; ++x) {
    const PointSet extra = sq.row(x) - m.row(x);
    if (!extra.empty()) {
      rep.issues.push_back({IssueKind::non_transitive_min, std::nullopt,
                            "min-entourage contains a path " + std::to_string(x + 1) + " -> " +
                                std::to_string(extra.first() + 1) + " but not the pair"});
      break;
    }
  }
  return rep;
}

class invalid_space : public error {
 public:
  explicit invalid_space(ValidationReport rep) : error("invalid space: " + rep.summary()), report_(std::move(rep)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Which topology a closure or cluster set refers to.
enum class Direction {
  forward,    ///< tau(U): neighbourhoods U(x)
  conjugate,  ///< tau(U^{-1}): neighbourhoods U^{-1}(x)
};

/// A finite quasi-uniform space given by a finite base of entourages.
///
/// On a finite set the generated filter of entourages is the up-set of
/// the min-entourage M (the intersection of the base), so "V is an
/// entourage" is decided as M subset of V. Construction validates.
class QUSpace {
 public:
  QUSpace() = default;

  static QUSpace make(GroundSet ground, std::vector<Relation> base, const ValidateOptions& opt = {}) {
    ValidationReport rep = validate(ground, base, opt);
    if (!rep.valid()) throw invalid_space(std::move(rep));
    return QUSpace(std::move(ground), std::move(base), std::move(rep));
  }

  static QUSpace make(std::size_t n, std::vector<Relation> base, const ValidateOptions& opt = {}) {
    return make(GroundSet{n, {}}, std::move(base), opt);
  }

  std::size_t size() const { return ground_.size; }
  const GroundSet& ground() const { return ground_; }
  const std::vector<Relation>& base() const { return base_; }
  const Relation& min_entourage() const { return min_; }
  const ValidationReport& validation() const { return report_; }

  /// The base with the min-entourage appended when it is not already a member.
  /// Lifted structures are built over this family so that their own
  /// min-entourage is the lift of M.
  const std::vector<Relation>& filter_base() const { return filter_base_; }

  bool is_entourage(const Relation& v) const { return min_.subset_of(v); }

  PointSet all() const { return PointSet::full(size()); }
  PointSet none() const { return PointSet(size()); }
  PointSet point(std::size_t i) const { return PointSet::singleton(size(), i); }

  /// Forward closure is M^{-1}(a); conjugate closure is M(a).
  PointSet closure(const PointSet& a, Direction d) const {
    return d == Direction::forward ? min_.preimage(a) : min_.image(a);
  }

  PointSet double_closure(const PointSet& a) const {
    return closure(a, Direction::forward) & closure(a, Direction::conjugate);
  }

  bool is_doubly_closed(const PointSet& a) const { return double_closure(a) == a; }

  /// Interior in tau(U^s): points whose M^s-neighbourhood lies inside a.
  PointSet symmetric_interior(const PointSet& a) const {
    PointSet out(size());
    for (std::size_t x = 0; x < size(); ++x)
      if (min_sym_.row(x).subset_of(a)) out.insert(x);
    return out;
  }

  const Relation& min_symmetric() const { return min_sym_; }

  /// Classes of M^s, each listed once, ordered by smallest member.
  std::vector<PointSet> t0_classes() const {
    std::vector<PointSet> out;
    PointSet seen(size());
    for (std::size_t x = 0; x < size(); ++x) {
      if (seen.contains(x)) continue;
      const PointSet cls = min_sym_.row(x);
      seen |= cls;
      out.push_back(cls);
    }
    return out;
  }

  bool is_t0() const { return min_sym_ == Relation::identity(size()); }

  bool is_uniform() const {
    for (const auto& u : base_)
      if (!u.is_symmetric()) return false;
    return true;
  }

  friend bool operator==(const QUSpace& a, const QUSpace& b) {
    return a.ground_ == b.ground_ && a.base_ == b.base_;
  }

 private:
  QUSpace(GroundSet ground, std::vector<Relation> base, ValidationReport rep)
      : ground_(std::move(ground)), base_(std::move(base)), report_(std::move(rep)) {
    min_ = base_.front();
    for (const auto& u : base_) min_ = min_ & u;
    min_sym_ = symmetrize(min_);
    filter_base_ = base_;
    bool present = false;
    for (const auto& u : base_) present = present || u == min_;
    if (!present) filter_base_.push_back(min_);
  }

  GroundSet ground_;
  std::vector<Relation> base_;
  ValidationReport report_;
  Relation min_;
  Relation min_sym_;
  std::vector<Relation> filter_base_;
};

/// The conjugate space (X, U^{-1}).
inline QUSpace conjugate(const QUSpace& s) {
  std::vector<Relation> base;
  for (const auto& u : s.base()) base.push_back(inverse(u));
  return QUSpace::make(s.ground(), std::move(base));
}

/// Subspace on `a`, points renumbered in increasing order.
inline QUSpace subspace(const QUSpace& s, const PointSet& a) {
  if (a.empty()) throw error("subspace: empty point set");
  std::vector<Relation> base;
  for (const auto& u : s.base()) base.push_back(u.restrict_to(a));
  GroundSet g{a.count(), {}};
  if (!s.ground().labels.empty())
    a.for_each([&](std::size_t i) { g.labels.push_back(s.ground().labels[i]); });
  return QUSpace::make(std::move(g), std::move(base));
}

/// Lifts a subset of subspace(s, a) back to the ground set of s.
inline PointSet embed_subset(const PointSet& a, const PointSet& sub) {
  const auto idx = a.elements();
  PointSet out(a.universe());
  sub.for_each([&](std::size_t p) { out.insert(idx.at(p)); });
  return out;
}

/// T0-quotient realized as the subspace on the smallest member of each class.
inline QUSpace t0_quotient(const QUSpace& s) {
  PointSet reps(s.size());
  for (const auto& c : s.t0_classes()) reps.insert(c.first());
  return subspace(s, reps);
}

}  // namespace qu
