#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "sumgraph/ffield.hpp"

namespace sumgraph {

/// Element (u, v) of the additive group k x k, as raw element codes.
struct GroupPoint {
  Elem u = 0;
  Elem v = 0;

  friend auto operator<=>(const GroupPoint&, const GroupPoint&) = default;
};

GroupPoint point_add(const FiniteField& field, GroupPoint a, GroupPoint b) noexcept;
GroupPoint point_sub(const FiniteField& field, GroupPoint a, GroupPoint b) noexcept;
GroupPoint point_neg(const FiniteField& field, GroupPoint a) noexcept;

enum class Family { Kloosterman, Birch, PartialHyperbola, QRHyperbola, Custom };

std::string family_name(Family family);

/// Connection set S of a Cayley sum graph on k x k.
///
/// Points are deduplicated and kept sorted by (u, v); that order is the
/// element ordering used for witnesses and serialization.
class SumSet {
 public:
  /// Arbitrary set; duplicates are dropped. Points must lie in the field.
  static SumSet custom(FiniteField field, std::vector<GroupPoint> points);

  const FiniteField& field() const noexcept { return field_; }
  const std::vector<GroupPoint>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  Family family() const noexcept { return family_; }
  /// Range parameter of the partial hyperbola family (1 otherwise).
  double t() const noexcept { return t_; }
  const std::optional<GroupPoint>& center() const noexcept { return center_; }

  bool contains(GroupPoint x) const;
  std::uint64_t key(GroupPoint x) const noexcept {
    return std::uint64_t{x.u} * field_.size() + x.v;
  }

 private:
  friend SumSet make_K(const FiniteField&);
  friend SumSet make_B(const FiniteField&);
  friend SumSet make_Kt(std::int64_t, double);
  friend SumSet make_Kplus(std::int64_t);

  SumSet(FiniteField field, std::vector<GroupPoint> points, Family family, double t,
         std::optional<GroupPoint> center);

  FiniteField field_;
  std::vector<GroupPoint> points_;
  Family family_;
  double t_;
  std::optional<GroupPoint> center_;
  std::unordered_set<std::uint64_t> index_;
};

/// K(k) = {(x, y) : xy = 1}.
SumSet make_K(const FiniteField& field);
/// B(k) = {(x, x^3)}.
SumSet make_B(const FiniteField& field);
/// K_t(p) = {(x, 1/x) : 1 <= x <= floor(t(p-1))} with F_p identified with {0..p-1}.
SumSet make_Kt(std::int64_t p, double t);
/// floor(t(p-1)), the upper end of the K_t(p) range; throws BadParameter unless 0 < t <= 1.
std::int64_t kt_range(std::int64_t p, double t);
/// K_+(p) = {(x, 1/x) : x a non-zero square}; requires p = 3 mod 4.
SumSet make_Kplus(std::int64_t p);

struct SidonVerdict {
  bool holds = true;
  /// (alpha, beta, gamma, delta) with alpha+beta = gamma+delta, alpha not in {gamma, delta}.
  std::optional<std::array<GroupPoint, 4>> witness;
};

inline constexpr std::size_t kMaxSidonScan = 4096;

SidonVerdict is_sidon(const SumSet& set);
SidonVerdict is_partial_symmetric_sidon(const SumSet& set, GroupPoint center);
SidonVerdict is_symmetric_sidon(const SumSet& set, GroupPoint center);

/// S restricted to a subset T of the group, together with the check that no
/// retained point s has -s in T.
struct Restriction {
  SumSet set;
  bool disjoint_from_negation;
};

Restriction restrict_to(const SumSet& set, const std::function<bool(GroupPoint)>& predicate);

}  // namespace sumgraph
