#include "wco/spectral_set.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "wco/format.hpp"

namespace wco {

std::string to_string(Membership m) {
  switch (m) {
    case Membership::In: return "in";
    case Membership::Out: return "out";
    case Membership::Unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(Knowledge k) {
  switch (k) {
    case Knowledge::Exact: return "exact";
    case Knowledge::ContainsAtLeast: return "contains_at_least";
    case Knowledge::Unknown: return "unknown";
  }
  return "unknown";
}

cplx DiskFunction::operator()(cplx z) const {
  cplx prod = 1.0;
  for (int k = 0; k < m; ++k) {
    prod *= weight(z);
    z = map(z);
  }
  return prod;
}

double DiskFunction::circle_lipschitz() const {
  const double wsup = weight.l1_norm();
  const double w1 = weight.derivative_bound();
  double total = 0.0;
  MoebiusMap iter = MoebiusMap::identity();
  for (int k = 0; k < m; ++k) {
    total += w1 * iter.max_circle_derivative();
    iter = compose(map, iter);
  }
  return total * std::pow(wsup, m - 1);
}

namespace {

struct Segment {
  double a, b;
  cplx va, vb;
};

// Lower bound on |v| over a segment whose endpoint values are va, vb and
// whose image has length at most lip * (b - a).
double segment_lower(const Segment& s, double lip) {
  return 0.5 * (std::abs(s.va) + std::abs(s.vb) - lip * (s.b - s.a));
}

template <class OnCertified>
Membership walk_circle(const DiskFunction& f, cplx c, double tol, const MembershipBudget& budget,
                       OnCertified&& on_certified) {
  const double lip = f.circle_lipschitz();
  const int n0 = std::max(budget.initial_samples, 8);
  std::vector<Segment> stack;
  stack.reserve(64);
  std::vector<cplx> vals(n0 + 1);
  for (int i = 0; i < n0; ++i) vals[i] = f(unit(kTwoPi * i / n0)) - c;
  vals[n0] = vals[0];
  for (int i = n0 - 1; i >= 0; --i)
    stack.push_back({kTwoPi * i / n0, kTwoPi * (i + 1) / n0, vals[i], vals[i + 1]});

  std::size_t used = static_cast<std::size_t>(n0);
  while (!stack.empty()) {
    const Segment s = stack.back();
    stack.pop_back();
    if (std::abs(s.va) <= tol || std::abs(s.vb) <= tol) return Membership::In;
    if (segment_lower(s, lip) > tol) {
      on_certified(s);
      continue;
    }
    if (++used > budget.max_segments) return Membership::Unknown;
    const double mid = 0.5 * (s.a + s.b);
    const cplx vm = f(unit(mid)) - c;
    stack.push_back({mid, s.b, vm, s.vb});
    stack.push_back({s.a, mid, s.va, vm});
  }
  return Membership::Out;  // every segment certified
}

}  // namespace

Membership range_membership(const DiskFunction& f, cplx c, double tol,
                            const MembershipBudget& budget) {
  double total = 0.0;
  const Membership walk = walk_circle(f, c, tol, budget, [&](const Segment& s) {
    // The image path stays at distance > tol from c and is shorter than
    // |va| + |vb|, so it sweeps less than pi: the principal argument is exact.
    total += std::arg(s.vb / s.va);
  });
  if (walk != Membership::Out) return walk;
  const long winding = std::lround(total / kTwoPi);
  if (winding >= 1) return Membership::In;
  if (winding == 0) return Membership::Out;
  return Membership::Unknown;
}

Membership curve_membership(const DiskFunction& f, cplx c, double tol,
                            const MembershipBudget& budget) {
  return walk_circle(f, c, tol, budget, [](const Segment&) {});
}

int sampled_winding(const DiskFunction& f, cplx c, int samples) {
  double total = 0.0;
  cplx prev = f(unit(0.0)) - c;
  for (int i = 1; i <= samples; ++i) {
    const cplx cur = f(unit(kTwoPi * i / samples)) - c;
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

Membership PlaneRegion::membership(cplx c, double tol) const {
  return kind == Kind::RangeOnDisk ? range_membership(f, c, tol) : curve_membership(f, c, tol);
}

SpectralSet::SpectralSet(Node node) : node_(std::move(node)) {}

SpectralSet SpectralSet::circle(double r) {
  if (r == 0.0) return origin();
  return SpectralSet(region::Circle{r});
}

SpectralSet SpectralSet::disk(double r) {
  if (r == 0.0) return origin();
  return SpectralSet(region::ClosedDisk{r});
}

SpectralSet SpectralSet::annulus(double r1, double r2) {
  if (r1 > r2) std::swap(r1, r2);
  if (r1 == r2) return circle(r1);
  if (r1 == 0.0) return disk(r2);
  return SpectralSet(region::ClosedAnnulus{r1, r2});
}

SpectralSet SpectralSet::points(std::vector<cplx> pts) {
  return SpectralSet(region::FinitePoints{std::move(pts)});
}

SpectralSet SpectralSet::root_preimage(int m, PlaneRegion base) {
  if (m < 1) throw DegenerateInput("root preimage order must be >= 1");
  return SpectralSet(region::RootPreimage{m, std::move(base)});
}

SpectralSet SpectralSet::unite(std::vector<SpectralSet> parts) {
  std::vector<SpectralSet> flat;
  for (auto& p : parts) {
    if (std::holds_alternative<region::Empty>(p.node_)) continue;
    if (auto* u = std::get_if<region::Union>(&p.node_)) {
      for (auto& q : u->parts) flat.push_back(q);
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.empty()) return empty();
  if (flat.size() == 1) return flat.front();
  return SpectralSet(region::Union{std::move(flat)});
}

namespace {

Membership by_modulus(bool inside) { return inside ? Membership::In : Membership::Out; }

}  // namespace

Membership SpectralSet::membership(cplx lambda, double tol) const {
  const double r = std::abs(lambda);
  return std::visit(
      [&](const auto& n) -> Membership {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, region::Empty>) {
          return Membership::Out;
        } else if constexpr (std::is_same_v<T, region::OriginPoint>) {
          return by_modulus(r <= tol);
        } else if constexpr (std::is_same_v<T, region::Circle>) {
          return by_modulus(std::abs(r - n.r) <= tol);
        } else if constexpr (std::is_same_v<T, region::ClosedDisk>) {
          return by_modulus(r <= n.r + tol);
        } else if constexpr (std::is_same_v<T, region::ClosedAnnulus>) {
          return by_modulus(r >= n.r1 - tol && r <= n.r2 + tol);
        } else if constexpr (std::is_same_v<T, region::FinitePoints>) {
          for (const cplx& p : n.points)
            if (std::abs(p - lambda) <= tol) return Membership::In;
          return Membership::Out;
        } else if constexpr (std::is_same_v<T, region::RootPreimage>) {
          const cplx mu = std::pow(lambda, n.m);
          const double scaled = tol * std::max(1.0, n.m * std::pow(r, n.m - 1));
          return n.base.membership(mu, scaled);
        } else {
          bool all_out = true;
          for (const auto& p : n.parts) {
            const Membership m = p.membership(lambda, tol);
            if (m == Membership::In) return Membership::In;
            if (m != Membership::Out) all_out = false;
          }
          return all_out ? Membership::Out : Membership::Unknown;
        }
      },
      node_);
}

bool SpectralSet::is_radial() const {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, region::FinitePoints> ||
                      std::is_same_v<T, region::RootPreimage>) {
          return false;
        } else if constexpr (std::is_same_v<T, region::Union>) {
          return std::all_of(n.parts.begin(), n.parts.end(),
                             [](const SpectralSet& p) { return p.is_radial(); });
        } else {
          return true;
        }
      },
      node_);
}

std::vector<std::pair<double, double>> SpectralSet::modulus_intervals() const {
  return std::visit(
      [](const auto& n) -> std::vector<std::pair<double, double>> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, region::Empty>) {
          return {};
        } else if constexpr (std::is_same_v<T, region::OriginPoint>) {
          return {{0.0, 0.0}};
        } else if constexpr (std::is_same_v<T, region::Circle>) {
          return {{n.r, n.r}};
        } else if constexpr (std::is_same_v<T, region::ClosedDisk>) {
          return {{0.0, n.r}};
        } else if constexpr (std::is_same_v<T, region::ClosedAnnulus>) {
          return {{n.r1, n.r2}};
        } else if constexpr (std::is_same_v<T, region::Union>) {
          std::vector<std::pair<double, double>> out;
          for (const auto& p : n.parts) {
            auto sub = p.modulus_intervals();
            out.insert(out.end(), sub.begin(), sub.end());
          }
          std::sort(out.begin(), out.end());
          return out;
        } else {
          throw DegenerateInput("modulus profile requested for a non-radial set");
        }
      },
      node_);
}

std::string SpectralSet::describe() const {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, region::Empty>) {
          return "empty";
        } else if constexpr (std::is_same_v<T, region::OriginPoint>) {
          return "{0}";
        } else if constexpr (std::is_same_v<T, region::Circle>) {
          return "circle(r=" + format_real(n.r) + ")";
        } else if constexpr (std::is_same_v<T, region::ClosedDisk>) {
          return "disk(r=" + format_real(n.r) + ")";
        } else if constexpr (std::is_same_v<T, region::ClosedAnnulus>) {
          return "annulus[" + format_real(n.r1) + ", " + format_real(n.r2) + "]";
        } else if constexpr (std::is_same_v<T, region::FinitePoints>) {
          std::string s = "{";
          for (std::size_t i = 0; i < n.points.size(); ++i) {
            if (i) s += ", ";
            s += format_complex(n.points[i]);
          }
          return s + "}";
        } else if constexpr (std::is_same_v<T, region::RootPreimage>) {
          const std::string what = n.base.kind == PlaneRegion::Kind::RangeOnDisk
                                       ? "w_" + std::to_string(n.m) + "(closed disk)"
                                       : "w_" + std::to_string(n.m) + "(circle)";
          return "{lambda : lambda^" + std::to_string(n.m) + " in " + what + "}";
        } else {
          std::string s;
          for (std::size_t i = 0; i < n.parts.size(); ++i) {
            if (i) s += " U ";
            s += n.parts[i].describe();
          }
          return s;
        }
      },
      node_);
}

SpectrumEntry SpectrumEntry::exact(SpectralSet s, std::vector<std::string> notes) {
  return {Knowledge::Exact, std::move(s), std::nullopt, std::move(notes)};
}

SpectrumEntry SpectrumEntry::at_least(SpectralSet inner, std::optional<SpectralSet> outer,
                                      std::vector<std::string> notes) {
  return {Knowledge::ContainsAtLeast, std::move(inner), std::move(outer), std::move(notes)};
}

SpectrumEntry SpectrumEntry::unknown(std::optional<SpectralSet> outer,
                                     std::vector<std::string> notes) {
  return {Knowledge::Unknown, SpectralSet::empty(), std::move(outer), std::move(notes)};
}

Membership SpectrumEntry::membership(cplx lambda, double tol) const {
  if (status == Knowledge::Exact) return set.membership(lambda, tol);
  if (status == Knowledge::ContainsAtLeast && set.membership(lambda, tol) == Membership::In)
    return Membership::In;
  if (outer && outer->membership(lambda, tol) == Membership::Out) return Membership::Out;
  return Membership::Unknown;
}

}  // namespace wco
