#include "gammatime/jumpcalc.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "gammatime/errors.hpp"
#include "gammatime/integrand.hpp"

namespace gammatime {

JumpPath::JumpPath(std::vector<double> times, std::vector<double> heights)
    : times_(std::move(times)), heights_(std::move(heights)) {
  if (times_.size() != heights_.size()) throw PreconditionError("JumpPath: times and heights differ in length");
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i]) || times_[i] < 0.0) throw PreconditionError("JumpPath: times must be finite and >= 0");
    if (!std::isfinite(heights_[i])) throw PreconditionError("JumpPath: heights must be finite");
    if (i > 0 && !(times_[i] > times_[i - 1])) throw PreconditionError("JumpPath: times must be strictly increasing");
  }
  prefix_.resize(heights_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < heights_.size(); ++i) {
    acc += heights_[i];
    prefix_[i] = acc;
  }
}

JumpPath JumpPath::from_unsorted(std::vector<double> times, std::vector<double> heights) {
  if (times.size() != heights.size()) throw PreconditionError("JumpPath: times and heights differ in length");
  std::vector<std::size_t> order(times.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });
  std::vector<double> t;
  std::vector<double> h;
  t.reserve(times.size());
  h.reserve(times.size());
  for (std::size_t i : order) {
    if (!t.empty() && t.back() == times[i]) {
      h.back() += heights[i];
    } else {
      t.push_back(times[i]);
      h.push_back(heights[i]);
    }
  }
  return JumpPath(std::move(t), std::move(h));
}

double JumpPath::amass(double t) const {
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  if (it == times_.begin()) return 0.0;
  return prefix_[static_cast<std::size_t>(it - times_.begin()) - 1];
}

double JumpPath::left_limit(double t) const {
  const auto it = std::lower_bound(times_.begin(), times_.end(), t);
  if (it == times_.begin()) return 0.0;
  return prefix_[static_cast<std::size_t>(it - times_.begin()) - 1];
}

double JumpPath::jump_at(double t) const {
  const auto it = std::lower_bound(times_.begin(), times_.end(), t);
  if (it == times_.end() || *it != t) return 0.0;
  return heights_[static_cast<std::size_t>(it - times_.begin())];
}

double integrate(const JumpPath& path, const std::function<double(double)>& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const double v = f(path.times()[i]);
    if (!std::isfinite(v)) {
      throw DomainError("integrate: integrand is not finite at jump time " + format_double(path.times()[i]));
    }
    sum += path.heights()[i] * v;
  }
  return sum;
}

double integrate(const JumpPath& path, const Integrand& f) {
  return integrate(path, [&f](double x) { return f(x); });
}

JumpPath compound(const JumpPath& path, std::span<const double> k) {
  if (k.size() != path.size()) throw PreconditionError("compound: need one reward per jump");
  std::vector<double> h(path.size());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = k[i] * path.heights()[i];
  return JumpPath(path.times(), std::move(h));
}

JumpPath variation(const JumpPath& path, const std::function<double(double)>& phi) {
  if (phi(0.0) != 0.0) throw PreconditionError("variation: phi(0) must be 0");
  std::vector<double> h(path.size());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = phi(path.heights()[i]);
  return JumpPath(path.times(), std::move(h));
}

double partition_sum(const JumpPath& path, std::span<const double> grid,
                     const std::function<double(double)>& phi) {
  double sum = 0.0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    sum += phi(path.amass(grid[k]) - path.amass(grid[k - 1]));
  }
  return sum;
}

JumpPath compose_smooth(const JumpPath& path, const std::function<double(double)>& phi) {
  std::vector<double> h(path.size());
  double phi_before = phi(0.0);
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double after = path.partial_sums()[i];
    const double phi_after = phi(after);
    h[i] = phi_after - phi_before;
    phi_before = phi_after;
  }
  return JumpPath(path.times(), std::move(h));
}

Modulated modulate(const JumpPath& path, std::function<double(double)> a) {
  std::vector<double> h(path.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double at = a(path.times()[i]);
    h[i] = at * at * path.heights()[i] * path.heights()[i];
  }
  Modulated out;
  out.bracket = JumpPath(path.times(), std::move(h));
  out.evaluator = [path, a = std::move(a)](double t) { return a(t) * path.amass(t); };
  return out;
}

InverseFn::InverseFn(std::vector<double> thresholds, std::vector<double> plateaus)
    : thresholds_(std::move(thresholds)), plateaus_(std::move(plateaus)) {
  if (thresholds_.size() != plateaus_.size()) throw PreconditionError("InverseFn: size mismatch");
}

ExtReal InverseFn::operator()(double v) const {
  if (v < 0.0) return 0.0;
  const auto it = std::upper_bound(thresholds_.begin(), thresholds_.end(), v);
  if (it == thresholds_.end()) return ExtReal::infinity();
  return plateaus_[static_cast<std::size_t>(it - thresholds_.begin())];
}

JumpPath InverseFn::as_path() const {
  if (plateaus_.empty()) return {};
  std::vector<double> t{0.0};
  std::vector<double> h{plateaus_.front()};
  for (std::size_t n = 0; n + 1 < plateaus_.size(); ++n) {
    t.push_back(thresholds_[n]);
    h.push_back(plateaus_[n + 1] - plateaus_[n]);
  }
  return JumpPath(std::move(t), std::move(h));
}

double InverseFn::max_jump() const {
  if (plateaus_.empty()) return 0.0;
  double m = plateaus_.front();
  for (std::size_t n = 1; n < plateaus_.size(); ++n) m = std::max(m, plateaus_[n] - plateaus_[n - 1]);
  return m;
}

InverseFn rcll_inverse(const JumpPath& path) {
  std::vector<double> g;
  std::vector<double> u;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const double h = path.heights()[i];
    if (h < 0.0) throw PreconditionError("rcll_inverse: heights must be >= 0");
    if (h == 0.0) continue;
    const double level = path.partial_sums()[i];
    if (!g.empty() && !(level > g.back())) continue;  // absorbed by rounding
    g.push_back(level);
    u.push_back(path.times()[i]);
  }
  return InverseFn(std::move(g), std::move(u));
}

namespace {

void write_header(std::ostream& out, const std::vector<std::string>& header) {
  for (const auto& line : header) out << "# " << line << '\n';
}

}  // namespace

void write_path_csv(std::ostream& out, const JumpPath& path, const std::vector<std::string>& header) {
  write_header(out, header);
  out << "t,h\n";
  for (std::size_t i = 0; i < path.size(); ++i) {
    out << format_double(path.times()[i]) << ',' << format_double(path.heights()[i]) << '\n';
  }
}

JumpPath read_path_csv(std::istream& in) {
  std::string line;
  bool seen_header = false;
  std::vector<double> t;
  std::vector<double> h;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      if (line != "t,h") throw PreconditionError("read_path_csv: expected header 't,h'");
      seen_header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw PreconditionError("read_path_csv: malformed row '" + line + "'");
    std::size_t used = 0;
    t.push_back(std::stod(line.substr(0, comma), &used));
    h.push_back(std::stod(line.substr(comma + 1), &used));
  }
  if (!seen_header) throw PreconditionError("read_path_csv: missing header");
  return JumpPath(std::move(t), std::move(h));
}

void write_grid_csv(std::ostream& out, const JumpPath& path, std::span<const double> grid,
                    const std::vector<std::string>& header) {
  write_header(out, header);
  out << "t,x\n";
  for (double t : grid) out << format_double(t) << ',' << format_double(path.amass(t)) << '\n';
}

}  // namespace gammatime
