#include "zicount/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "zicount/errors.hpp"

namespace zicount {

namespace {

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

bool finite_eval(const ValueGradient& vg, std::size_t dim) {
  return std::isfinite(vg.value) && vg.gradient.size() == dim && all_finite(vg.gradient);
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

OptimResult maximize(const Objective& objective, std::vector<double> start,
                     const OptimControls& controls) {
  const std::size_t n = start.size();
  if (n == 0) throw DomainError("maximize: empty start vector");

  // Work on phi = -objective so the update formulas are the standard
  // minimization ones.
  auto eval = [&](const std::vector<double>& x) {
    ValueGradient vg = objective(x);
    if (vg.gradient.size() != n && std::isfinite(vg.value))
      throw DomainError("maximize: gradient dimension does not match start");
    return vg;
  };

  ValueGradient cur = eval(start);
  if (!finite_eval(cur, n))
    throw NonFiniteObjective("objective not finite at start point");

  std::vector<double> x = std::move(start);
  double phi = -cur.value;
  std::vector<double> g(n);  // gradient of phi
  for (std::size_t i = 0; i < n; ++i) g[i] = -cur.gradient[i];

  OptimResult res;
  res.gradient_norm = inf_norm(g);
  if (res.gradient_norm <= controls.gradient_tol) {
    res.argmax = x;
    res.max_value = -phi;
    res.iterations = 0;
    res.converged = true;
    return res;
  }

  Matrix H = Matrix::identity(n);
  bool h_scaled = false;
  const double c1 = 1e-4;

  std::size_t it = 0;
  bool converged = false;
  bool polished = false;
  for (it = 1; it <= controls.max_iterations; ++it) {
    // Search direction d = -H g; fall back to steepest descent if H has
    // drifted away from positive definiteness or blown up.
    std::vector<double> d = matvec(H, g);
    for (double& v : d) v = -v;
    double gd = dot(g, d);
    if (!(gd < 0.0) || !all_finite(d)) {
      H = Matrix::identity(n);
      h_scaled = false;
      for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
      gd = dot(g, d);
      if (!(gd < 0.0)) break;  // zero gradient; handled by tolerance below
    }

    double alpha = 1.0;
    bool accepted = false;
    bool saw_finite = false;
    std::vector<double> xt(n);
    ValueGradient trial;
    // Once the Armijo improvement demanded falls below the floating-point
    // resolution of phi, insisting on a measured decrease would stall the
    // final digits; accept any non-worsening (within roundoff) step instead.
    const double resolution = 8.0 * 1e-16 * std::max(1.0, std::fabs(phi));
    for (int h = 0; h <= controls.max_halvings; ++h) {
      for (std::size_t i = 0; i < n; ++i) xt[i] = x[i] + alpha * d[i];
      trial = eval(xt);
      const bool finite = finite_eval(trial, n);
      saw_finite = saw_finite || finite;
      if (finite) {
        const double required = c1 * alpha * gd;  // negative
        if (-trial.value <= phi + required ||
            (-required < resolution && -trial.value <= phi + resolution)) {
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
    }

    if (!accepted) {
      if (!saw_finite)
        throw NonFiniteObjective(
            "objective/gradient non-finite after step-halving exhaustion");
      converged = inf_norm(g) <= controls.gradient_tol;
      break;
    }

    const double phi_new = -trial.value;
    std::vector<double> g_new(n);
    for (std::size_t i = 0; i < n; ++i) g_new[i] = -trial.gradient[i];

    std::vector<double> s(n), yv(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = xt[i] - x[i];
      yv[i] = g_new[i] - g[i];
    }
    const double sy = dot(s, yv);
    if (sy > 1e-12 * std::sqrt(dot(s, s)) * std::sqrt(dot(yv, yv)) && sy > 0.0 &&
        std::isfinite(1.0 / sy)) {
      if (!h_scaled) {
        const double yy = dot(yv, yv);
        if (yy > 0.0) {
          const double scale = sy / yy;
          for (double& v : H.data) v *= scale;
        }
        h_scaled = true;
      }
      // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
      const double rho = 1.0 / sy;
      std::vector<double> Hy = matvec(H, yv);
      const double yHy = dot(yv, Hy);
      Matrix H_new = H;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          H_new(i, j) += rho * rho * (sy + yHy) * s[i] * s[j] -
                         rho * (Hy[i] * s[j] + s[i] * Hy[j]);
      if (all_finite(H_new.data)) H = std::move(H_new);
    }

    const double rel_change =
        std::fabs(phi_new - phi) / std::max(1.0, std::fabs(phi_new));
    x = xt;
    phi = phi_new;
    g = std::move(g_new);

    if (inf_norm(g) <= controls.gradient_tol && rel_change <= controls.rel_obj_tol) {
      // one extra quasi-Newton step polishes the last digits of the argmax
      if (!polished) {
        polished = true;
        continue;
      }
      converged = true;
      break;
    }
  }

  res.argmax = x;
  res.max_value = -phi;
  res.gradient_norm = inf_norm(g);
  res.iterations = std::min(it, controls.max_iterations);
  res.converged = converged || res.gradient_norm <= controls.gradient_tol;
  return res;
}

Matrix observed_information(const GradientFn& gradient,
                            const std::vector<double>& theta_hat, double step) {
  const std::size_t n = theta_hat.size();
  if (!(step > 0.0)) throw DomainError("observed_information: step must be > 0");
  Matrix jac(n, n, 0.0);  // jac(i,j) = d g_i / d theta_j
  std::vector<double> probe = theta_hat;
  for (std::size_t j = 0; j < n; ++j) {
    const double h = step * std::max(1.0, std::fabs(theta_hat[j]));
    probe[j] = theta_hat[j] + h;
    const std::vector<double> gp = gradient(probe);
    probe[j] = theta_hat[j] - h;
    const std::vector<double> gm = gradient(probe);
    probe[j] = theta_hat[j];
    if (gp.size() != n || gm.size() != n || !all_finite(gp) || !all_finite(gm))
      throw NonFiniteObjective("gradient non-finite at finite-difference probe");
    for (std::size_t i = 0; i < n; ++i) jac(i, j) = (gp[i] - gm[i]) / (2.0 * h);
  }
  Matrix info(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      info(i, j) = -0.5 * (jac(i, j) + jac(j, i));
  return info;
}

}  // namespace zicount
