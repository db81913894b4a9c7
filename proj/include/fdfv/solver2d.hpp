#pragma once

// Two-dimensional FD-FV scheme on a periodic Cartesian mesh.
//
// Unknowns: cell averages ubar_{i,j}, x-face values u_{i+1/2,j} at
// (x_f, y_j) and y-face values u_{i,j+1/2} at (x_i, y_g). Face values move
// with the 1D DDO along their normal direction plus a first-order one-sided
// nodal difference along the tangential direction, both upwinded
// characteristic by characteristic.

#include <functional>
#include <span>
#include <vector>

#include "fdfv/ddo.hpp"
#include "fdfv/physics.hpp"
#include "fdfv/solver1d.hpp"
#include "fdfv/time_integration.hpp"

namespace fdfv {

struct MeshState2D {
  int nx = 0, ny = 0, dim = 1;
  double x_left = 0.0, y_left = 0.0, hx = 0.0, hy = 0.0, time = 0.0;
  // Blocks: averages [nx][ny], x-faces [nx+1][ny], y-faces [nx][ny+1].
  std::vector<double> data;

  MeshState2D() = default;
  MeshState2D(int nx_, int ny_, int d, double x0, double y0, double dx, double dy);

  std::span<double> values() { return data; }
  std::span<const double> values() const { return data; }

  std::size_t average_index(int i, int j) const {
    return static_cast<std::size_t>(i * ny + j) * dim;
  }
  std::size_t xface_index(int f, int j) const {
    return (static_cast<std::size_t>(nx) * ny + f * ny + j) * dim;
  }
  std::size_t yface_index(int i, int g) const {
    return (static_cast<std::size_t>(nx) * ny + (nx + 1) * ny + i * (ny + 1) + g) * dim;
  }

  double* average_ptr(int i, int j) { return data.data() + average_index(i, j); }
  const double* average_ptr(int i, int j) const { return data.data() + average_index(i, j); }
  double* xface_ptr(int f, int j) { return data.data() + xface_index(f, j); }
  const double* xface_ptr(int f, int j) const { return data.data() + xface_index(f, j); }
  double* yface_ptr(int i, int g) { return data.data() + yface_index(i, g); }
  const double* yface_ptr(int i, int g) const { return data.data() + yface_index(i, g); }

  Vars average(int i, int j) const;
  Vars xface(int f, int j) const;
  Vars yface(int i, int g) const;

  double x_center(int i) const { return x_left + (i + 0.5) * hx; }
  double y_center(int j) const { return y_left + (j + 0.5) * hy; }
  double x_face(int f) const { return x_left + f * hx; }
  double y_face(int g) const { return y_left + g * hy; }
};

struct Profile2D {
  std::function<Vars(double, double)> at;
};

// Mean of `profile` over a rectangle with a points x points Gauss rule.
Vars cell_average_2d(const Profile2D& profile, double x0, double x1, double y0,
                     double y1, int dim, int points);

class FdfvSolver2D {
 public:
  // Periodic in both directions. Only first-order DDO families are
  // supported; others raise ValidationError.
  FdfvSolver2D(ModelPtr model, UpwindFamily family, int nx, int ny, double x_left,
               double x_right, double y_left, double y_right);

  const FluxModel& model() const { return *model_; }
  int scheme_order() const { return family_.order + 1; }

  MeshState2D initialize(const Profile2D& ic) const;
  MeshState2D rhs(const MeshState2D& state, double t) const;
  // Periodic copies of the duplicated boundary faces.
  void apply_bc(MeshState2D& state, double t) const;
  // max over faces and both axes of the spectral radius.
  double max_wave_speed(const MeshState2D& state) const;

 private:
  // Positive and negative normal stencils merged; `shift` is relative to the
  // face index, into cells (nodal = false) or faces.
  struct Term {
    int shift;
    bool nodal;
    double pos, neg;
  };

  template <int D>
  void face_rates(const MeshState2D& s, MeshState2D& r) const;

  ModelPtr model_;
  UpwindFamily family_;
  int nx_, ny_, d_;
  double x_left_, y_left_, hx_, hy_;
  std::vector<Term> terms_;
};

// dt = cfl * min(hx, hy) / max wave speed unless options.dt is set.
RunResult<MeshState2D> run_2d(const FdfvSolver2D& solver, const RKScheme& scheme,
                              MeshState2D initial, const RunOptions& options);

}  // namespace fdfv
