#include "nks/branch_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nks/bifurcation.hpp"

namespace nks {

namespace {

constexpr const char* kMagic = "# nks-branch v1";

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& tok) {
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw FormatError("branch file: bad number '" + tok + "'");
  return v;
}

int parse_int(const std::string& tok) {
  int v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw FormatError("branch file: bad integer '" + tok + "'");
  return v;
}

Termination termination_from_name(const std::string& name) {
  for (const Termination t :
       {Termination::left_domain, Termination::max_steps, Termination::step_underflow,
        Termination::hit_trivial, Termination::instability_detected}) {
    if (name == termination_name(t)) return t;
  }
  throw FormatError("branch file: unknown termination '" + name + "'");
}

}  // namespace

void write_branch(const Branch& branch, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path.string());

  os << kMagic << "\n";
  os << "# r " << format_double(branch.r) << " s " << format_double(branch.s)
     << " modes " << branch.modes << "\n";
  os << "# seed_k " << branch.seed_k << " sigma " << format_double(branch.seed_sigma)
     << "\n";
  os << "# newton_tol " << format_double(branch.newton_tol) << "\n";
  os << "# termination " << termination_name(branch.termination) << "\n";
  os << "# points " << branch.points.size() << "\n";
  os << "# columns: eps arclength l2 jac_min_sv zero_count coeffs[1.." << branch.modes
     << "]\n";
  for (const auto& pt : branch.points) {
    os << format_double(pt.eps) << ' ' << format_double(pt.arclength) << ' '
       << format_double(pt.l2) << ' ' << format_double(pt.jac_min_sv) << ' '
       << pt.zero_count;
    for (int k = 1; k <= branch.modes; ++k) os << ' ' << format_double(pt.u.coeff(k));
    os << '\n';
  }
  if (!os) throw IoError("write failed: " + path.string());
}

Branch read_branch(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open for reading: " + path.string());

  std::string line;
  if (!std::getline(is, line)) throw FormatError("branch file: empty");
  if (line != kMagic) {
    if (line.rfind("# nks-branch", 0) == 0)
      throw VersionError("branch file: version mismatch, found '" + line + "'");
    throw FormatError("branch file: missing header magic");
  }

  Branch branch;
  std::size_t n_points = 0;
  // Header lines are fixed-order; parse them token-wise.
  {
    if (!std::getline(is, line)) throw FormatError("branch file: truncated header");
    std::istringstream ls(line);
    std::string hash, key;
    std::string rv, sv, mv;
    ls >> hash >> key >> rv;
    if (hash != "#" || key != "r") throw FormatError("branch file: bad r line");
    branch.r = parse_double(rv);
    ls >> key >> sv;
    if (key != "s") throw FormatError("branch file: bad s line");
    branch.s = parse_double(sv);
    ls >> key >> mv;
    if (key != "modes") throw FormatError("branch file: bad modes line");
    branch.modes = parse_int(mv);
    if (branch.modes < 1) throw FormatError("branch file: bad mode count");
  }
  {
    if (!std::getline(is, line)) throw FormatError("branch file: truncated header");
    std::istringstream ls(line);
    std::string hash, key, kv, sv;
    ls >> hash >> key >> kv;
    if (hash != "#" || key != "seed_k") throw FormatError("branch file: bad seed line");
    branch.seed_k = parse_int(kv);
    ls >> key >> sv;
    if (key != "sigma") throw FormatError("branch file: bad seed line");
    branch.seed_sigma = parse_double(sv);
  }
  {
    if (!std::getline(is, line)) throw FormatError("branch file: truncated header");
    std::istringstream ls(line);
    std::string hash, key, tv;
    ls >> hash >> key >> tv;
    if (hash != "#" || key != "newton_tol")
      throw FormatError("branch file: bad newton_tol line");
    branch.newton_tol = parse_double(tv);
  }
  {
    if (!std::getline(is, line)) throw FormatError("branch file: truncated header");
    std::istringstream ls(line);
    std::string hash, key, tv;
    ls >> hash >> key >> tv;
    if (hash != "#" || key != "termination")
      throw FormatError("branch file: bad termination line");
    branch.termination = termination_from_name(tv);
  }
  {
    if (!std::getline(is, line)) throw FormatError("branch file: truncated header");
    std::istringstream ls(line);
    std::string hash, key, nv;
    ls >> hash >> key >> nv;
    if (hash != "#" || key != "points") throw FormatError("branch file: bad points line");
    n_points = static_cast<std::size_t>(parse_int(nv));
  }
  if (!std::getline(is, line) || line.rfind("# columns:", 0) != 0)
    throw FormatError("branch file: missing columns line");

  for (std::size_t i = 0; i < n_points; ++i) {
    if (!std::getline(is, line))
      throw FormatError("branch file: truncated at point " + std::to_string(i));
    std::istringstream ls(line);
    std::string tok;
    BranchPoint pt;
    auto next = [&]() -> std::string {
      if (!(ls >> tok))
        throw FormatError("branch file: short line at point " + std::to_string(i));
      return tok;
    };
    pt.eps = parse_double(next());
    pt.arclength = parse_double(next());
    pt.l2 = parse_double(next());
    pt.jac_min_sv = parse_double(next());
    pt.zero_count = parse_int(next());
    Eigen::VectorXd coeffs(branch.modes);
    for (int k = 0; k < branch.modes; ++k) coeffs[k] = parse_double(next());
    if (ls >> tok)
      throw FormatError("branch file: trailing data at point " + std::to_string(i));
    pt.u = SpectralField(std::move(coeffs));
    branch.points.push_back(std::move(pt));
  }
  return branch;
}

namespace {

struct PlotRange {
  double x_min, x_max, y_min, y_max;
};

std::string branch_label(const Branch& b) {
  if (b.seed_k >= 1) return "C" + std::to_string(b.seed_k);
  return "trivial";
}

}  // namespace

void emit_diagram(const std::vector<Branch>& branches,
                  const std::filesystem::path& csv_path,
                  const std::filesystem::path& svg_path) {
  if (branches.empty())
    throw std::invalid_argument("emit_diagram: no branches supplied");

  {
    std::ofstream os(csv_path);
    if (!os) throw IoError("cannot open for writing: " + csv_path.string());
    os << "branch,eps,l2\n";
    for (const auto& b : branches) {
      const std::string label = branch_label(b);
      for (const auto& pt : b.points)
        os << label << ',' << format_double(pt.eps) << ',' << format_double(pt.l2)
           << '\n';
    }
  }

  PlotRange range{0.0, 1.05, 0.0, 1e-12};
  for (const auto& b : branches) {
    for (const auto& pt : b.points) {
      range.x_max = std::max(range.x_max, 1.05 * pt.eps);
      range.y_max = std::max(range.y_max, 1.05 * pt.l2);
    }
  }
  if (range.y_max <= 1e-12) range.y_max = 1.0;

  const double W = 760, H = 520, ml = 70, mr = 20, mt = 20, mb = 50;
  auto X = [&](double eps) {
    return ml + (eps - range.x_min) / (range.x_max - range.x_min) * (W - ml - mr);
  };
  auto Y = [&](double l2) {
    return H - mb - (l2 - range.y_min) / (range.y_max - range.y_min) * (H - mt - mb);
  };
  static const char* palette[] = {"#1f77b4", "#d62728", "#e8b800", "#000000",
                                  "#2ca02c", "#9467bd", "#8c564b", "#7f7f7f"};

  std::ofstream os(svg_path);
  if (!os) throw IoError("cannot open for writing: " + svg_path.string());
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
     << "' viewBox='0 0 " << W << " " << H << "'>\n";
  os << "<rect width='100%' height='100%' fill='white'/>\n";
  os << "<line x1='" << ml << "' y1='" << H - mb << "' x2='" << W - mr << "' y2='"
     << H - mb << "' stroke='black'/>\n";
  os << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << H - mb
     << "' stroke='black'/>\n";
  os << "<text x='" << (W / 2) << "' y='" << H - 12
     << "' font-size='14' text-anchor='middle'>eps</text>\n";
  os << "<text x='18' y='" << (H / 2)
     << "' font-size='14' text-anchor='middle' transform='rotate(-90 18 " << (H / 2)
     << ")'>L2 norm</text>\n";

  // axis ticks
  for (int i = 0; i <= 5; ++i) {
    const double ex = range.x_min + i * (range.x_max - range.x_min) / 5;
    const double ey = range.y_min + i * (range.y_max - range.y_min) / 5;
    os << "<line x1='" << X(ex) << "' y1='" << H - mb << "' x2='" << X(ex) << "' y2='"
       << H - mb + 5 << "' stroke='black'/>\n";
    os << "<text x='" << X(ex) << "' y='" << H - mb + 18
       << "' font-size='11' text-anchor='middle'>" << std::round(ex * 100) / 100
       << "</text>\n";
    os << "<line x1='" << ml - 5 << "' y1='" << Y(ey) << "' x2='" << ml << "' y2='"
       << Y(ey) << "' stroke='black'/>\n";
    os << "<text x='" << ml - 8 << "' y='" << Y(ey) + 4
       << "' font-size='11' text-anchor='end'>" << std::round(ey * 100) / 100
       << "</text>\n";
  }

  // sigma_k markers on the eps axis, from the parameters of the first branch
  const double r = branches.front().r, s = branches.front().s;
  for (int k = 1; k <= 12; ++k) {
    const double sigma = std::pow(double(k), r - s);
    if (sigma < range.x_min || sigma > range.x_max) continue;
    os << "<circle cx='" << X(sigma) << "' cy='" << Y(0.0)
       << "' r='3.5' fill='none' stroke='#555'/>\n";
    os << "<text x='" << X(sigma) << "' y='" << Y(0.0) - 8
       << "' font-size='10' text-anchor='middle' fill='#555'>s" << k << "</text>\n";
  }

  int color = 0;
  for (const auto& b : branches) {
    if (b.points.empty()) continue;
    const char* stroke = palette[color++ % 8];
    if (b.points.size() == 1) {
      os << "<circle cx='" << X(b.points[0].eps) << "' cy='" << Y(b.points[0].l2)
         << "' r='3' fill='" << stroke << "'/>\n";
    } else {
      os << "<polyline fill='none' stroke='" << stroke << "' stroke-width='1.5' points='";
      for (const auto& pt : b.points) os << X(pt.eps) << ',' << Y(pt.l2) << ' ';
      os << "'/>\n";
    }
    os << "<text x='" << X(b.points.back().eps) << "' y='" << Y(b.points.back().l2) - 6
       << "' font-size='11' fill='" << stroke << "'>" << branch_label(b) << "</text>\n";
  }
  os << "</svg>\n";
  if (!os) throw IoError("write failed: " + svg_path.string());
}

void write_profiles(const Branch& branch, const std::filesystem::path& path,
                    int max_profiles, int n_grid) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path.string());

  const std::size_t n = branch.points.size();
  std::vector<std::size_t> picks;
  if (n > 0) {
    const std::size_t count = std::min<std::size_t>(max_profiles, n);
    for (std::size_t i = 0; i < count; ++i)
      picks.push_back(count == 1 ? 0 : i * (n - 1) / (count - 1));
    picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
  }

  os << "# x";
  for (const auto i : picks)
    os << " u(eps=" << format_double(branch.points[i].eps) << ")";
  os << "\n";

  // closed grid including both endpoints of [-pi, pi]
  std::vector<Eigen::VectorXd> columns;
  for (const auto i : picks) {
    Eigen::VectorXd open = to_physical(branch.points[i].u, n_grid);
    Eigen::VectorXd closed(n_grid + 1);
    closed.head(n_grid) = open;
    closed[n_grid] = open[0];  // u(pi) = u(-pi) by periodicity
    columns.push_back(std::move(closed));
  }
  for (int j = 0; j <= n_grid; ++j) {
    const double x = -std::numbers::pi + 2.0 * std::numbers::pi * j / n_grid;
    os << format_double(x);
    for (const auto& col : columns) os << ' ' << format_double(col[j]);
    os << '\n';
  }
  if (!os) throw IoError("write failed: " + path.string());
}

}  // namespace nks
