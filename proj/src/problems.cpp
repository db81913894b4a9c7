#include "fdfv/problems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "fdfv/errors.hpp"
#include "fdfv/riemann.hpp"

namespace fdfv {

namespace {

constexpr double kPi = std::numbers::pi;

Vars scalar(double u) { return {u, 0.0, 0.0, 0.0}; }

Vars euler_state(double rho, double u, double p) {
  return primitive_to_conservative({rho, u, p, 0.0}, 3);
}

Vars constant_state(const Vars& w, double) { return w; }

// Default CFL numbers of the five pairings: just below the linear limit for
// smooth problems, and the reduced values used for discontinuous Euler data.
const std::map<std::string, double, std::less<>>& smooth_cfl() {
  static const std::map<std::string, double, std::less<>> m = {
      {"D1up-RK2", 0.95},        {"D2up-RK3", 0.39}, {"D3up-biased-RK4", 0.77},
      {"D3up-RK4", 0.29},        {"D4up-biased-RK5", 0.47},
      {"fvm", 0.8},              {"fvm-va", 0.8}};
  return m;
}

const std::map<std::string, double, std::less<>>& shock_cfl() {
  static const std::map<std::string, double, std::less<>> m = {
      {"D1up-RK2", 0.8},        {"D2up-RK3", 0.2}, {"D3up-biased-RK4", 0.4},
      {"D3up-RK4", 0.1},        {"D4up-biased-RK5", 0.2},
      {"fvm", 0.8},             {"fvm-va", 0.8}};
  return m;
}

double wrap_into(double x, double lo, double hi) {
  const double len = hi - lo;
  double y = std::fmod(x - lo, len);
  if (y < 0.0) y += len;
  return lo + y;
}

Problem advection_periodic() {
  Problem p;
  p.name = "advection-periodic";
  p.model = advection_model(2.0);
  p.x_left = -1.0;
  p.x_right = 1.0;
  p.final_time = 1.0;
  auto u0 = [](double x) { return scalar(1.0 + 0.5 * std::sin(kPi * x)); };
  p.initial = {u0, {}};
  p.bc = BoundarySpec::periodic();
  p.exact = [u0](double t) {
    return Profile{[u0, t](double x) { return u0(x - 2.0 * t); }, {}};
  };
  p.default_cfl = smooth_cfl();
  return p;
}

double dirichlet_shape(double s) {
  return s <= 0.0 ? 1.0 + 0.5 * s * s * s * std::sin(2.0 * kPi * s) : 1.0;
}

Problem advection_dirichlet() {
  Problem p;
  p.name = "advection-dirichlet";
  p.model = advection_model(1.0);
  p.x_left = -0.5;
  p.x_right = 0.5;
  p.final_time = 0.5;
  p.initial = {[](double x) { return scalar(dirichlet_shape(x)); }, {0.0}};
  p.bc = BoundarySpec::dirichlet(
      [](double t) {
        const double s = t + 0.5;
        return scalar(1.0 + 0.5 * s * s * s * std::sin(2.0 * kPi * s));
      },
      [](double) { return scalar(1.0); });
  p.exact = [](double t) {
    return Profile{[t](double x) { return scalar(dirichlet_shape(x - t)); }, {t}};
  };
  p.default_cfl = smooth_cfl();
  // The boundary closure lowers the usable limit of the fifth-order pairing.
  p.default_cfl["D4up-biased-RK5"] = 0.35;
  return p;
}

Problem square_wave() {
  Problem p;
  p.name = "square-wave";
  p.model = advection_model(1.0);
  p.x_left = -1.5;
  p.x_right = 1.5;
  p.final_time = 1.0;
  auto shape = [](double x) { return scalar(x >= -1.0 && x < 0.0 ? 2.0 : 1.0); };
  p.initial = {shape, {-1.0, 0.0}};
  p.bc = BoundarySpec::periodic();
  p.exact = [shape](double t) {
    std::vector<double> cuts;
    for (double b : {-1.0, 0.0}) cuts.push_back(wrap_into(b + t, -1.5, 1.5));
    return Profile{[shape, t](double x) { return shape(wrap_into(x - t, -1.5, 1.5)); }, cuts};
  };
  p.default_cfl = smooth_cfl();
  return p;
}

Problem euler_smooth() {
  Problem p;
  p.name = "euler-smooth-periodic";
  p.model = euler1d_model();
  p.x_left = -1.0;
  p.x_right = 1.0;
  p.final_time = 0.3;
  p.initial = {[](double x) {
                 const double s = 0.5 * std::sin(kPi * x);
                 return euler_state(1.0 + s, 2.0 + s, 1.0 + s);
               },
               {}};
  p.bc = BoundarySpec::periodic();
  p.reference = ReferenceRecipe{"D4up-biased-RK5", 2560, 0.45};
  p.default_cfl = smooth_cfl();
  p.default_cfl["D1up-RK2"] = 0.75;
  return p;
}

Problem sod() {
  Problem p;
  p.name = "sod";
  p.model = euler1d_model();
  p.x_left = -2.0;
  p.x_right = 2.0;
  p.final_time = 0.8;
  const Vars left = euler_state(1.0, 0.0, 1.0);
  const Vars right = euler_state(0.125, 0.0, 0.1);
  p.initial = {[left, right](double x) { return x < 0.0 ? left : right; }, {0.0}};
  p.bc = BoundarySpec::dirichlet([left](double t) { return constant_state(left, t); },
                                 [right](double t) { return constant_state(right, t); });
  p.exact = [](double t) {
    auto solver = std::make_shared<ExactRiemann>(Primitive1D{1.0, 0.0, 1.0},
                                                 Primitive1D{0.125, 0.0, 0.1});
    const double a_l = std::sqrt(kGamma);
    const double u = solver->star_velocity();
    // Rarefaction head and tail, contact and shock positions.
    std::vector<double> cuts = {-a_l * t, u * t};
    {
      const double ps = solver->star_pressure();
      const double a_star = a_l * std::pow(ps, (kGamma - 1.0) / (2.0 * kGamma));
      cuts.push_back((u - a_star) * t);
      const double ar = std::sqrt(kGamma * 0.1 / 0.125);
      const double ratio = ps / 0.1;
      const double s = ar * std::sqrt((kGamma + 1.0) / (2.0 * kGamma) * ratio +
                                      (kGamma - 1.0) / (2.0 * kGamma));
      cuts.push_back(s * t);
    }
    return Profile{[solver, t](double x) {
                     if (t <= 0.0) {
                       return x < 0.0 ? euler_state(1.0, 0.0, 1.0) : euler_state(0.125, 0.0, 0.1);
                     }
                     const Primitive1D q = solver->sample(x / t);
                     return euler_state(q.rho, q.u, q.p);
                   },
                   cuts};
  };
  p.default_cfl = shock_cfl();
  p.fallback_cfl = 0.2;
  return p;
}

// Reference fixture: piecewise-constant profile over the stored cells.
struct Fixture {
  std::vector<double> faces;
  std::vector<Vars> states;
};

std::shared_ptr<const Fixture> load_fixture(const std::string& file) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const Fixture>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(file); it != cache.end()) return it->second;
  const std::string path = data_dir() + "/" + file;
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("reference fixture '" + path +
                          "' is missing; generate it with `fdfv reference`");
  }
  auto fx = std::make_shared<Fixture>();
  std::string line;
  std::getline(in, line);
  std::vector<double> centres;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    double x, rho, u, p;
    char c;
    ss >> x >> c >> rho >> c >> u >> c >> p;
    if (!ss) throw ValidationError("malformed line in fixture '" + path + "'");
    centres.push_back(x);
    fx->states.push_back(euler_state(rho, u, p));
  }
  if (centres.size() < 2) throw ValidationError("fixture '" + path + "' is empty");
  const double h = (centres.back() - centres.front()) / (centres.size() - 1);
  for (std::size_t i = 0; i < centres.size(); ++i) fx->faces.push_back(centres[i] - 0.5 * h);
  fx->faces.push_back(centres.back() + 0.5 * h);
  cache[file] = fx;
  return fx;
}

Problem shu_osher() {
  Problem p;
  p.name = "shu-osher";
  p.model = euler1d_model();
  p.x_left = -5.0;
  p.x_right = 5.0;
  p.final_time = 1.8;
  const Vars left = euler_state(3.857143, 2.629369, 10.33333);
  auto shape = [left](double x) {
    return x < -4.0 ? left : euler_state(1.0 + 0.2 * std::sin(5.0 * x), 0.0, 1.0);
  };
  p.initial = {shape, {-4.0}};
  const Vars right = shape(5.0);
  p.bc = BoundarySpec::dirichlet([left](double t) { return constant_state(left, t); },
                                 [right](double t) { return constant_state(right, t); });
  p.fixture = "shu_osher_reference.csv";
  const double final_time = p.final_time;
  p.exact = [file = p.fixture, final_time](double t) {
    if (std::abs(t - final_time) > 1e-12) {
      throw ValidationError("the shu-osher reference exists only at t = 1.8");
    }
    auto fx = load_fixture(file);
    return Profile{[fx](double x) {
                     auto it = std::upper_bound(fx->faces.begin(), fx->faces.end(), x);
                     long i = static_cast<long>(it - fx->faces.begin()) - 1;
                     i = std::clamp(i, 0L, static_cast<long>(fx->states.size()) - 1);
                     return fx->states[i];
                   },
                   fx->faces};
  };
  p.default_cfl = shock_cfl();
  p.fallback_cfl = 0.2;
  return p;
}

Problem nonconvex() {
  Problem p;
  p.name = "nonconvex";
  p.model = nonconvex_model();
  p.x_left = -2.0;
  p.x_right = 2.0;
  p.final_time = 0.04;
  p.initial = {[](double x) { return scalar(x < 0.0 ? -3.0 : 3.0); }, {0.0}};
  p.bc = BoundarySpec::dirichlet([](double) { return scalar(-3.0); },
                                 [](double) { return scalar(3.0); });
  p.exact = [](double t) {
    return Profile{[t](double x) { return scalar(nonconvex_exact(x, t)); },
                   {-19.5 * t, 0.0, 19.5 * t}};
  };
  p.fallback_cfl = 0.05;
  return p;
}

Vars vortex_state(double x, double y) {
  const double eps = 5.0;
  const double r2 = x * x + y * y;
  const double e = std::exp(0.5 * (1.0 - r2));
  const double u = 1.0 - eps * y / (2.0 * kPi) * e;
  const double v = 1.0 + eps * x / (2.0 * kPi) * e;
  const double base = 1.0 - (kGamma - 1.0) * eps * eps / (8.0 * kGamma * kPi * kPi) *
                                std::exp(1.0 - r2);
  const double rho = std::pow(base, 1.0 / (kGamma - 1.0));
  const double pr = std::pow(base, kGamma / (kGamma - 1.0));
  return primitive_to_conservative({rho, u, v, pr}, 4);
}

Problem vortex2d() {
  Problem p;
  p.name = "vortex2d";
  p.model = euler2d_model();
  p.space_dim = 2;
  p.x_left = p.y_left = -5.0;
  p.x_right = p.y_right = 5.0;
  p.final_time = 10.0;
  p.initial_2d = {vortex_state};
  p.exact_2d = [](double t) {
    return Profile2D{[t](double x, double y) {
      return vortex_state(wrap_into(x - t, -5.0, 5.0), wrap_into(y - t, -5.0, 5.0));
    }};
  };
  p.default_cfl = {{"D1up-RK2", 0.3}, {"fvm", 0.3}, {"fvm-va", 0.3}};
  p.fallback_cfl = 0.3;
  return p;
}

const std::map<std::string, Problem, std::less<>>& registry() {
  static const std::map<std::string, Problem, std::less<>> m = [] {
    std::map<std::string, Problem, std::less<>> out;
    for (Problem p : {advection_periodic(), advection_dirichlet(), square_wave(),
                      euler_smooth(), sod(), shu_osher(), nonconvex(), vortex2d()}) {
      out.emplace(p.name, std::move(p));
    }
    return out;
  }();
  return m;
}

}  // namespace

double Problem::cfl_for(std::string_view scheme) const {
  auto it = default_cfl.find(scheme);
  return it == default_cfl.end() ? fallback_cfl : it->second;
}

const Problem& problem(std::string_view name) {
  const auto& m = registry();
  auto it = m.find(name);
  if (it == m.end()) {
    std::string valid;
    for (const auto& n : problem_names()) valid += " " + n;
    throw ValidationError("unknown problem '" + std::string(name) + "'; valid:" + valid);
  }
  return it->second;
}

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names = {
      "advection-periodic", "advection-dirichlet", "square-wave", "euler-smooth-periodic",
      "sod", "shu-osher", "nonconvex", "vortex2d"};
  return names;
}

double nonconvex_g(double xi) {
  auto df = [](double u) { return u * u * u - 2.5 * u; };
  double lo = -3.0, hi = -std::sqrt(5.0 / 6.0);
  if (xi < df(lo) || xi > df(hi)) throw ValidationError("nonconvex_g: argument outside branch");
  // f' increases on this branch.
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (df(mid) < xi ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double nonconvex_exact(double x, double t) {
  if (t <= 0.0) return x < 0.0 ? -3.0 : 3.0;
  const double edge = 19.5 * t;
  if (x <= -edge) return -3.0;
  if (x >= edge) return 3.0;
  if (x < 0.0) return nonconvex_g(x / t);
  // x = 0 takes the right-hand value.
  return -nonconvex_g(-x / t);
}

std::string data_dir() {
  if (const char* env = std::getenv("FDFV_DATA_DIR")) return env;
  return FDFV_DATA_DIR;
}

}  // namespace fdfv
