#include "sumgraph/sidon.hpp"

#include <algorithm>
#include <cmath>

#include "sumgraph/error.hpp"

namespace sumgraph {

GroupPoint point_add(const FiniteField& field, GroupPoint a, GroupPoint b) noexcept {
  return {field.add(a.u, b.u), field.add(a.v, b.v)};
}

GroupPoint point_sub(const FiniteField& field, GroupPoint a, GroupPoint b) noexcept {
  return {field.sub(a.u, b.u), field.sub(a.v, b.v)};
}

GroupPoint point_neg(const FiniteField& field, GroupPoint a) noexcept { return {field.neg(a.u), field.neg(a.v)}; }

std::string family_name(Family family) {
  switch (family) {
    case Family::Kloosterman: return "kloosterman";
    case Family::Birch: return "birch";
    case Family::PartialHyperbola: return "kt";
    case Family::QRHyperbola: return "kplus";
    case Family::Custom: return "custom";
  }
  return "custom";
}

SumSet::SumSet(FiniteField field, std::vector<GroupPoint> points, Family family, double t,
               std::optional<GroupPoint> center)
    : field_(std::move(field)), points_(std::move(points)), family_(family), t_(t), center_(center) {
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  index_.reserve(points_.size() * 2);
  for (const auto& x : points_) index_.insert(key(x));
}

SumSet SumSet::custom(FiniteField field, std::vector<GroupPoint> points) {
  for (const auto& x : points) {
    if (!field.contains(x.u) || !field.contains(x.v)) throw Error(Errc::BadParameter, "point outside the field");
  }
  return SumSet(std::move(field), std::move(points), Family::Custom, 1.0, std::nullopt);
}

bool SumSet::contains(GroupPoint x) const {
  if (!field_.contains(x.u) || !field_.contains(x.v)) return false;
  return index_.contains(key(x));
}

SumSet make_K(const FiniteField& field) {
  std::vector<GroupPoint> pts;
  pts.reserve(field.size() - 1);
  for (Elem x = 1; x < field.size(); ++x) pts.push_back({x, field.inv(x)});
  return SumSet(field, std::move(pts), Family::Kloosterman, 1.0, GroupPoint{0, 0});
}

SumSet make_B(const FiniteField& field) {
  std::vector<GroupPoint> pts;
  pts.reserve(field.size());
  for (Elem x = 0; x < field.size(); ++x) pts.push_back({x, field.pow(x, 3)});
  return SumSet(field, std::move(pts), Family::Birch, 1.0, GroupPoint{0, 0});
}

std::int64_t kt_range(std::int64_t p, double t) {
  if (!(t > 0.0 && t <= 1.0)) throw Error(Errc::BadParameter, "t must lie in (0, 1]");
  // The small slack keeps products such as 0.29 * 100 from rounding below the integer.
  return static_cast<std::int64_t>(std::floor(t * static_cast<double>(p - 1) + 1e-9));
}

SumSet make_Kt(std::int64_t p, double t) {
  if (!(t > 0.0 && t <= 1.0)) throw Error(Errc::BadParameter, "t must lie in (0, 1]");
  auto field = make_field(p, 1);
  const std::int64_t top = kt_range(p, t);
  std::vector<GroupPoint> pts;
  for (std::int64_t x = 1; x <= top; ++x) {
    const auto e = static_cast<Elem>(x);
    pts.push_back({e, field.inv(e)});
  }
  return SumSet(field, std::move(pts), Family::PartialHyperbola, t, GroupPoint{0, 0});
}

SumSet make_Kplus(std::int64_t p) {
  auto field = make_field(p, 1);
  if (p % 4 != 3) throw Error(Errc::BadCongruence, std::to_string(p) + " is not 3 mod 4");
  std::vector<GroupPoint> pts;
  for (Elem x = 1; x < field.size(); ++x) {
    if (field.legendre(x) == 1) pts.push_back({x, field.inv(x)});
  }
  return SumSet(field, std::move(pts), Family::QRHyperbola, 1.0, GroupPoint{0, 0});
}

namespace {

void require_scan_size(const SumSet& set) {
  if (set.size() > kMaxSidonScan) throw Error(Errc::SizeExceeded, "Sidon scan limited to 4096 points");
}

// Lexicographically first violating (alpha, beta, gamma) in point order.
SidonVerdict first_witness(const SumSet& set, const std::optional<GroupPoint>& exempt) {
  const auto& f = set.field();
  const auto& pts = set.points();
  for (const auto& alpha : pts) {
    for (const auto& beta : pts) {
      const GroupPoint sum = point_add(f, alpha, beta);
      if (exempt && sum == *exempt) continue;
      for (const auto& gamma : pts) {
        if (gamma == alpha) continue;
        const GroupPoint delta = point_sub(f, sum, gamma);
        if (delta == alpha || !set.contains(delta)) continue;
        return {false, std::array<GroupPoint, 4>{alpha, beta, gamma, delta}};
      }
    }
  }
  return {true, std::nullopt};
}

// Two distinct unordered pairs share a non-exempt sum iff the set is not
// (partial) Sidon, so the quadratic sort-and-compare pass decides the verdict
// and the cubic scan only runs to extract the witness.
SidonVerdict scan(const SumSet& set, const std::optional<GroupPoint>& exempt) {
  require_scan_size(set);
  const auto& f = set.field();
  const auto& pts = set.points();
  std::vector<std::uint64_t> sums;
  sums.reserve(pts.size() * (pts.size() + 1) / 2);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i; j < pts.size(); ++j) {
      const GroupPoint s = point_add(f, pts[i], pts[j]);
      if (exempt && s == *exempt) continue;
      sums.push_back(set.key(s));
    }
  }
  std::sort(sums.begin(), sums.end());
  if (std::adjacent_find(sums.begin(), sums.end()) == sums.end()) return {true, std::nullopt};
  return first_witness(set, exempt);
}

}  // namespace

SidonVerdict is_sidon(const SumSet& set) { return scan(set, std::nullopt); }

SidonVerdict is_partial_symmetric_sidon(const SumSet& set, GroupPoint center) { return scan(set, center); }

SidonVerdict is_symmetric_sidon(const SumSet& set, GroupPoint center) {
  auto verdict = is_partial_symmetric_sidon(set, center);
  if (!verdict.holds) return verdict;
  for (const auto& s : set.points()) {
    if (!set.contains(point_sub(set.field(), center, s))) return {false, std::nullopt};
  }
  return verdict;
}

Restriction restrict_to(const SumSet& set, const std::function<bool(GroupPoint)>& predicate) {
  std::vector<GroupPoint> kept;
  bool disjoint = true;
  for (const auto& s : set.points()) {
    if (!predicate(s)) continue;
    kept.push_back(s);
    if (predicate(point_neg(set.field(), s))) disjoint = false;
  }
  return {SumSet::custom(set.field(), std::move(kept)), disjoint};
}

}  // namespace sumgraph
