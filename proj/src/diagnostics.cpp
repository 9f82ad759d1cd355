#include "nks/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace nks {

IdentityReport make_identity_report(std::string name, double lhs, double rhs,
                                    double tol) {
  IdentityReport rep;
  rep.name = std::move(name);
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.rel_error = std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
  rep.pass = rep.rel_error <= tol;
  return rep;
}

IdentityReport check_energy_identity(const ModelParams& p, const SpectralField& u,
                                     double tol) {
  const double hs = sobolev_seminorm(u, p.s / 2.0);
  if (hs < 1e-12)
    throw DegenerateField("check_energy_identity: H^{s/2} seminorm below 1e-12");
  const double hr = sobolev_seminorm(u, p.r / 2.0);
  return make_identity_report("energy_identity", hr * hr, p.eps * hs * hs, tol);
}

std::vector<IdentityReport> check_eps_window(const Branch& branch, double margin) {
  std::vector<IdentityReport> out;

  double eps_min = std::numeric_limits<double>::infinity();
  double eps_max = -std::numeric_limits<double>::infinity();
  bool any_nontrivial = false;
  bool inside = true;
  for (const auto& pt : branch.points) {
    if (pt.l2 <= 1e-8) continue;
    any_nontrivial = true;
    eps_min = std::min(eps_min, pt.eps);
    eps_max = std::max(eps_max, pt.eps);
    if (!(pt.eps > 0.0 && pt.eps < 1.0 - 1e-8)) inside = false;
  }

  if (!any_nontrivial) {
    IdentityReport rep;
    rep.name = "eps_in_unit_interval (vacuous)";
    rep.pass = true;
    out.push_back(rep);
    return out;
  }

  IdentityReport window;
  window.name = "eps_in_unit_interval";
  window.lhs = eps_min;
  window.rhs = eps_max;
  window.pass = inside;
  out.push_back(window);

  if (branch.seed_k == 1) {
    const double lo = std::pow(2.0, branch.r - branch.s) + margin;
    const double hi = 1.0 - margin;
    IdentityReport cover;
    cover.name = "eps_covers_global_range";
    cover.lhs = eps_min;
    cover.rhs = eps_max;
    cover.pass = (eps_min <= lo && eps_max >= hi);
    out.push_back(cover);
  } else if (branch.seed_k >= 2) {
    IdentityReport sub;
    sub.name = "eps_below_seed_sigma";
    sub.lhs = eps_max;
    sub.rhs = branch.seed_sigma + margin;
    sub.pass = eps_max <= branch.seed_sigma + margin;
    out.push_back(sub);
  }
  return out;
}

IdentityReport check_hs_bound(const Branch& branch, double window_width) {
  IdentityReport rep;
  rep.name = "hs_window_bound";
  rep.pass = true;
  if (branch.points.empty() || !(window_width > 0.0)) return rep;

  std::map<long, std::vector<double>> windows;
  for (const auto& pt : branch.points) {
    windows[std::lround(std::floor(pt.eps / window_width))].push_back(
        sobolev_seminorm(pt.u, branch.s));
  }
  double worst_ratio = 0.0;
  for (auto& [idx, hs] : windows) {
    if (hs.size() < 3) continue;
    std::nth_element(hs.begin(), hs.begin() + hs.size() / 2, hs.end());
    const double median = std::max(hs[hs.size() / 2], 1e-300);
    const double mx = *std::max_element(hs.begin(), hs.end());
    if (mx / (10.0 * median) > worst_ratio) {
      worst_ratio = mx / (10.0 * median);
      rep.lhs = mx;
      rep.rhs = 10.0 * median;
    }
  }
  rep.rel_error = worst_ratio;
  rep.pass = worst_ratio <= 1.0;
  return rep;
}

IdentityReport check_apriori_hs(const ModelParams& p, const SpectralField& u) {
  const double lhs = p.eps * sobolev_seminorm(u, p.s);
  const double rhs =
      sobolev_seminorm(u, p.r) + sobolev_seminorm(u, 1.0) * linf_norm(u);
  IdentityReport rep;
  rep.name = "apriori_hs_estimate";
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.rel_error = std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
  rep.pass = lhs <= rhs * (1.0 + 1e-8);
  return rep;
}

TrendReport check_small_eps_alternative(const std::vector<BranchPoint>& points,
                                        double s) {
  TrendReport rep;
  if (points.size() < 3) {
    rep.vacuous = true;
    rep.summary = "too few points for a trend";
    return rep;
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].eps > points[i - 1].eps + 1e-12)
      throw std::invalid_argument(
          "check_small_eps_alternative: points must be sorted by decreasing eps");
  }

  std::vector<double> hs, li;
  for (const auto& pt : points) {
    hs.push_back(sobolev_seminorm(pt.u, s / 2.0));
    li.push_back(linf_norm(pt.u));
  }
  rep.hs_first = hs.front();
  rep.hs_last = hs.back();
  rep.linf_first = li.front();
  rep.linf_last = li.back();

  if (hs.back() == 0.0 && li.back() == 0.0 && hs.front() == 0.0) {
    rep.vacuous = true;
    rep.summary = "trivial data: both quantities identically zero";
    return rep;
  }

  // Trend over the final tenth (at least 5 points) of the eps-decreasing tail.
  const std::size_t window = std::max<std::size_t>(5, points.size() / 10);
  const std::size_t start = points.size() > window ? points.size() - window : 0;
  bool hs_monotone = true, linf_monotone_down = true;
  for (std::size_t i = start + 1; i < points.size(); ++i) {
    if (hs[i] < hs[i - 1] * (1.0 - 1e-9)) hs_monotone = false;
    if (li[i] > li[i - 1] * (1.0 + 1e-9)) linf_monotone_down = false;
  }
  rep.hs_growing = hs_monotone && hs.back() > hs.front();
  rep.linf_decaying = linf_monotone_down && li.back() < li.front();

  if (rep.hs_growing && rep.linf_decaying)
    rep.summary = "consistent with both alternatives";
  else if (rep.hs_growing)
    rep.summary = "consistent with alternative (i): H^{s/2} growth";
  else if (rep.linf_decaying)
    rep.summary = "consistent with alternative (ii): amplitude decay";
  else
    rep.summary = "no monotone trend over the recorded range";
  return rep;
}

}  // namespace nks
