#include "crn/dynamics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <Eigen/Dense>

#include "crn/error.hpp"
#include "crn/structure.hpp"

namespace crn {

namespace {

// Sparse per-edge view of the network for repeated evaluation.
struct Kinetics {
  struct Term {
    std::size_t species;
    int power;
  };
  struct Edge {
    double k;
    std::vector<Term> source;
    std::vector<std::pair<std::size_t, double>> change;
  };
  std::size_t n = 0;
  std::vector<Edge> edges;

  explicit Kinetics(const MassActionSystem& sys) : n(sys.network().num_species()) {
    const auto& net = sys.network();
    for (std::size_t e = 0; e < net.num_edges(); ++e) {
      Edge edge{sys.rates()[e], {}, {}};
      const auto& y = net.vertices()[net.edges()[e].source].coeffs;
      for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i] != 0) edge.source.push_back({i, y[i]});
      auto v = reaction_vector(net, e);
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) edge.change.push_back({i, static_cast<double>(v[i])});
      edges.push_back(std::move(edge));
    }
  }

  static double power(double x, int p) {
    switch (p) {
      case 1: return x;
      case 2: return x * x;
      case 3: return x * x * x;
      default: return std::pow(x, p);
    }
  }

  void eval(const double* x, double* out) const {
    std::fill(out, out + n, 0.0);
    for (const auto& e : edges) {
      double rate = e.k;
      for (const auto& t : e.source) rate *= power(x[t.species], t.power);
      if (rate == 0.0) continue;
      for (const auto& [i, d] : e.change) out[i] += rate * d;
    }
  }

  // ∂rate/∂x_j computed as p x_j^{p-1} Π_{i≠j} x_i^{p_i}, valid on the
  // boundary of the orthant.
  Eigen::MatrixXd jac(const double* x) const {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (const auto& e : edges) {
      for (std::size_t a = 0; a < e.source.size(); ++a) {
        double d = e.k * e.source[a].power * power(x[e.source[a].species], e.source[a].power - 1);
        for (std::size_t b = 0; b < e.source.size(); ++b)
          if (b != a) d *= power(x[e.source[b].species], e.source[b].power);
        if (d == 0.0) continue;
        for (const auto& [i, c] : e.change)
          j(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(e.source[a].species)) += d * c;
      }
    }
    return j;
  }
};

void require_nonnegative(std::span<const double> x, std::size_t n) {
  if (x.size() != n) throw Error(ErrorKind::DimensionMismatch, "state length mismatch");
  for (double xi : x)
    if (!(xi >= 0.0)) throw Error(ErrorKind::NegativeState, "state has a negative component");
}

// Dormand-Prince 5(4) tableau (autonomous system, so the nodes c_i are unused).
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

}  // namespace

std::vector<double> rhs(const MassActionSystem& sys, std::span<const double> x) {
  Kinetics kin(sys);
  require_nonnegative(x, kin.n);
  std::vector<double> out(kin.n);
  kin.eval(x.data(), out.data());
  return out;
}

DenseMatrix jacobian(const MassActionSystem& sys, std::span<const double> x) {
  Kinetics kin(sys);
  if (x.size() != kin.n) throw Error(ErrorKind::DimensionMismatch, "state length mismatch");
  for (double xi : x)
    if (!(xi > 0.0)) throw Error(ErrorKind::NonpositiveState, "jacobian needs a positive state");
  Eigen::MatrixXd j = kin.jac(x.data());
  DenseMatrix out(kin.n, std::vector<double>(kin.n));
  for (std::size_t r = 0; r < kin.n; ++r)
    for (std::size_t c = 0; c < kin.n; ++c)
      out[r][c] = j(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  return out;
}

Trajectory integrate(const MassActionSystem& sys, std::span<const double> x0, const IntegrateOptions& opts) {
  Kinetics kin(sys);
  require_nonnegative(x0, kin.n);
  if (!(opts.t_end > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_end must be positive");
  if (!(opts.rtol > 0.0) || !(opts.atol > 0.0))
    throw Error(ErrorKind::InvalidArgument, "tolerances must be positive");

  const std::size_t n = kin.n;
  const double atol = opts.atol, rtol = opts.rtol, t_end = opts.t_end;
  const double stride = opts.dense_output_stride;

  Trajectory traj;
  traj.meta.rtol = rtol;
  traj.meta.atol = atol;
  std::vector<double> y(x0.begin(), x0.end());
  traj.times.push_back(0.0);
  traj.states.push_back(y);
  if (n == 0) return traj;

  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n), err(n);
  std::vector<double> r1(n), r2(n), r3(n), r4(n), r5(n);
  auto scale = [&](double a, double b) { return atol + rtol * std::max(std::abs(a), std::abs(b)); };

  kin.eval(y.data(), k1.data());

  // Initial step from the size of the state and its derivative.
  double h;
  {
    double d0 = 0, d1n = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double sc = scale(y[i], y[i]);
      d0 = std::max(d0, std::abs(y[i]) / sc);
      d1n = std::max(d1n, std::abs(k1[i]) / sc);
    }
    double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h0 = std::min(h0, t_end);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = std::max(0.0, y[i] + h0 * k1[i]);
    kin.eval(tmp.data(), k2.data());
    double d2 = 0;
    for (std::size_t i = 0; i < n; ++i) d2 = std::max(d2, std::abs(k2[i] - k1[i]) / scale(y[i], y[i]) / h0);
    double h1 = std::max(d1n, d2) <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                            : std::pow(0.01 / std::max(d1n, d2), 1.0 / 5.0);
    h = std::min({100 * h0, h1, t_end});
  }

  const double safe = 0.9, beta = 0.04, alpha = 0.2 - 0.75 * beta;
  double err_old = 1e-4;
  bool last_rejected = false;
  double t = 0.0;
  std::size_t next_sample = 1;
  const double h_min_abs = 1e-14 * std::max(1.0, t_end);

  while (t < t_end) {
    if (traj.meta.accepted_steps + traj.meta.rejected_steps >= opts.max_steps)
      throw Error(ErrorKind::StepLimitExceeded, "exceeded " + std::to_string(opts.max_steps) + " steps at t = " +
                                                    format_number(t));
    bool final_step = false;
    if (t + 1.01 * h >= t_end) {
      h = t_end - t;
      final_step = true;
    }

    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    kin.eval(tmp.data(), k2.data());
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    kin.eval(tmp.data(), k3.data());
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    kin.eval(tmp.data(), k4.data());
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    kin.eval(tmp.data(), k5.data());
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    kin.eval(tmp.data(), k6.data());
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    kin.eval(ynew.data(), k7.data());

    double e_norm = 0.0;
    bool overshoot = false;
    for (std::size_t i = 0; i < n; ++i) {
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      e_norm = std::max(e_norm, std::abs(err[i]) / scale(y[i], ynew[i]));
      overshoot |= ynew[i] < -atol;
    }
    if (!std::isfinite(e_norm)) e_norm = 1e10;

    if (e_norm > 1.0 || overshoot) {
      ++traj.meta.rejected_steps;
      double fac = overshoot && e_norm <= 1.0 ? 0.5 : std::max(0.2, safe * std::pow(e_norm, -alpha));
      h *= std::min(fac, 0.9);
      last_rejected = true;
      if (h < h_min_abs) {
        if (overshoot)
          throw Error(ErrorKind::NegativeOvershoot, "state left the nonnegative orthant at t = " + format_number(t));
        throw Error(ErrorKind::StepLimitExceeded, "step size underflow at t = " + format_number(t));
      }
      continue;
    }

    // Accepted. Interpolate output samples inside (t, t + h] before clamping.
    const double t_new = final_step ? t_end : t + h;
    if (stride > 0.0) {
      for (std::size_t i = 0; i < n; ++i) {
        double ydiff = ynew[i] - y[i];
        double bspl = h * k1[i] - ydiff;
        r1[i] = y[i];
        r2[i] = ydiff;
        r3[i] = bspl;
        r4[i] = ydiff - h * k7[i] - bspl;
        r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      for (;;) {
        double ts = static_cast<double>(next_sample) * stride;
        if (ts >= t_end * (1 - 1e-12) || ts > t_new) break;
        double theta = (ts - t) / h, theta1 = 1.0 - theta;
        std::vector<double> s(n);
        for (std::size_t i = 0; i < n; ++i)
          s[i] = std::max(0.0, r1[i] + theta * (r2[i] + theta1 * (r3[i] + theta * (r4[i] + theta1 * r5[i]))));
        traj.times.push_back(ts);
        traj.states.push_back(std::move(s));
        ++next_sample;
      }
    }

    bool clamped = false;
    for (std::size_t i = 0; i < n; ++i)
      if (ynew[i] < 0.0) {
        ynew[i] = 0.0;
        ++traj.meta.clamped_components;
        clamped = true;
      }
    y.swap(ynew);
    if (clamped) {
      kin.eval(y.data(), k1.data());
    } else {
      k1.swap(k7);
    }
    t = t_new;
    ++traj.meta.accepted_steps;
    if (stride <= 0.0 || final_step) {
      traj.times.push_back(t);
      traj.states.push_back(y);
    }

    double fac = safe * std::pow(e_norm, -alpha) * std::pow(err_old, beta);
    if (e_norm == 0.0) fac = 10.0;
    fac = std::clamp(fac, 0.2, 10.0);
    if (last_rejected) fac = std::min(fac, 1.0);
    err_old = std::max(e_norm, 1e-4);
    last_rejected = false;
    h *= fac;
  }
  return traj;
}

std::vector<double> refine_equilibrium(const MassActionSystem& sys, std::span<const double> seed, double tol,
                                       int max_iter) {
  Kinetics kin(sys);
  require_nonnegative(seed, kin.n);
  const auto n = static_cast<Eigen::Index>(kin.n);

  // Orthonormal basis of the stoichiometric subspace.
  auto ech = reduced_row_echelon(stoichiometric_matrix(sys.network()).transpose());
  const auto s = static_cast<Eigen::Index>(ech.pivots.size());
  Eigen::MatrixXd basis(n, s);
  for (Eigen::Index c = 0; c < s; ++c)
    for (Eigen::Index r = 0; r < n; ++r)
      basis(r, c) = ech.reduced(static_cast<std::size_t>(c), static_cast<std::size_t>(r)).convert_to<double>();
  Eigen::MatrixXd q = s > 0 ? Eigen::MatrixXd(basis.householderQr().householderQ() * Eigen::MatrixXd::Identity(n, s))
                            : Eigen::MatrixXd(n, 0);

  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(seed.data(), n);
  Eigen::VectorXd f(n), trial_f(n);
  kin.eval(x.data(), f.data());
  for (int iter = 0; iter < max_iter; ++iter) {
    double norm = f.cwiseAbs().maxCoeff();
    if (norm < tol) break;

    Eigen::MatrixXd reduced_jac = q.transpose() * kin.jac(x.data()) * q;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(reduced_jac);
    if (!lu.isInvertible()) throw Error(ErrorKind::SingularJacobian, "Jacobian singular on the compatibility class");
    Eigen::VectorXd step = q * lu.solve(-(q.transpose() * f));

    double limit = 1.0;
    for (Eigen::Index i = 0; i < n; ++i)
      if (step(i) < 0.0) limit = std::min(limit, x(i) / -step(i));
    double a = limit;
    Eigen::VectorXd trial(n);
    for (;;) {
      trial = (x + a * step).cwiseMax(0.0);
      kin.eval(trial.data(), trial_f.data());
      if (trial_f.cwiseAbs().maxCoeff() < (1.0 - 1e-4 * a) * norm || a < 1e-10) break;
      a *= 0.5;
    }
    x = trial;
    f = trial_f;
  }
  if (!(f.cwiseAbs().maxCoeff() < tol))
    throw Error(ErrorKind::MaxIterations,
                "‖rhs‖∞ = " + format_number(f.cwiseAbs().maxCoeff()) + " after " + std::to_string(max_iter) +
                    " iterations");
  return std::vector<double>(x.data(), x.data() + n);
}

double conservation_drift(const Trajectory& traj, const ReactionNetwork& net, const RatVector& c) {
  if (c.size() != net.num_species()) throw Error(ErrorKind::DimensionMismatch, "c length mismatch");
  if (!is_zero(stoichiometric_matrix(net).left_multiply(c)))
    throw Error(ErrorKind::NotConserved, "c is not orthogonal to every reaction vector");
  auto cd = to_double(c);
  auto total = [&](const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += cd[i] * x[i];
    return s;
  };
  if (traj.states.empty()) return 0.0;
  double c0 = total(traj.states.front()), drift = 0.0;
  for (const auto& x : traj.states) drift = std::max(drift, std::abs(total(x) - c0));
  return drift;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const std::vector<std::string>& species) {
  out << "t";
  for (const auto& s : species) out << "," << s;
  out << "\n";
  for (std::size_t r = 0; r < traj.times.size(); ++r) {
    out << format_number(traj.times[r]);
    for (double v : traj.states[r]) out << "," << format_number(v);
    out << "\n";
  }
}

TrajectoryTable read_trajectory_csv(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
  };
  auto strip = [](std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    return s;
  };

  TrajectoryTable table;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::InvalidArgument, "empty CSV");
  auto header = split(strip(line));
  if (header.empty() || strip(header[0]) != "t")
    throw Error(ErrorKind::InvalidArgument, "CSV header must start with 't'");
  if (header.size() < 2) throw Error(ErrorKind::InvalidArgument, "CSV has no species columns");
  for (std::size_t i = 1; i < header.size(); ++i) table.species.push_back(strip(header[i]));

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip(line);
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != header.size())
      throw Error(ErrorKind::InvalidArgument, "CSV line " + std::to_string(line_no) + ": wrong number of fields");
    std::vector<double> values;
    for (auto& cell : cells) {
      cell = strip(cell);
      double v = 0.0;
      auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || p != cell.data() + cell.size() || !std::isfinite(v))
        throw Error(ErrorKind::InvalidArgument, "CSV line " + std::to_string(line_no) + ": bad number '" + cell + "'");
      values.push_back(v);
    }
    if (!table.trajectory.times.empty() && values[0] <= table.trajectory.times.back())
      throw Error(ErrorKind::InvalidArgument, "CSV line " + std::to_string(line_no) + ": times must increase");
    table.trajectory.times.push_back(values[0]);
    table.trajectory.states.emplace_back(values.begin() + 1, values.end());
  }
  if (table.trajectory.times.empty()) throw Error(ErrorKind::InvalidArgument, "CSV has no data rows");
  return table;
}

}  // namespace crn
