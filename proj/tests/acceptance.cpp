// Acceptance suite: one pass/fail line per criterion. Soft criteria print
// WARN instead of FAIL and do not affect the exit code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include "xfer/align.hpp"
#include "xfer/assembly.hpp"
#include "xfer/errors.hpp"
#include "xfer/fields.hpp"
#include "xfer/gmres.hpp"
#include "xfer/grid.hpp"
#include "xfer/interpolant.hpp"
#include "xfer/parallel.hpp"
#include "xfer/preconditioner.hpp"
#include "xfer/quaternion.hpp"
#include "xfer/radii.hpp"
#include "xfer/tensor.hpp"
#include "xfer/transfer.hpp"

using namespace xfer;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

PointSet random_source(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point3> pts(n);
  for (auto& p : pts) p = Point3{u(rng), u(rng), u(rng)};
  return PointSet::source(std::move(pts));
}

PointSet random_interior_destination(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.06, 0.94);
  std::vector<Point3> pts(n);
  for (auto& p : pts) p = Point3{u(rng), u(rng), u(rng)};
  return PointSet::destination(std::move(pts));
}

PointSet grid_cloud(int cells, int q, double lo = 0.0, double hi = 1.0) {
  StructuredGrid g;
  g.box_min = Point3{lo, lo, lo};
  g.box_max = Point3{hi, hi, hi};
  g.cells = {cells, cells, cells};
  return gauss_points(g, q);
}

const SolverConfig kSolver{1e-10, 2000, 50};

double min_det(const TensorField& f) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& t : f.samples) m = std::min(m, det3(t));
  return m;
}

// ---------------------------------------------------------------- C1
Outcome positivity_trials() {
  std::mt19937_64 rng(20260810);
  const int kTrials = 200;
  const int M_choices[2] = {2, 5};
  const double alpha_choices[2] = {2.0, 3.0};

  int resamples = 0;
  double global_min = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < kTrials; ++trial) {
    std::uniform_real_distribution<double> usize(std::log(200.0), std::log(2000.0));
    const auto n_src = static_cast<std::size_t>(std::exp(usize(rng)));
    std::uniform_int_distribution<int> udst(2000, 30000);
    const auto n_dst = static_cast<std::size_t>(udst(rng));
    const RadiusConfig rcfg{M_choices[trial % 2], alpha_choices[(trial / 2) % 2]};

    FieldParams params;
    std::uniform_real_distribution<double> uamp(0.3, 0.85);
    params.amplitude = uamp(rng);
    params.modes = 2 + trial % 4;

    for (int attempt = 0;; ++attempt) {
      try {
        const PointSet src = random_source(n_src, rng);
        const PointSet dst = random_interior_destination(n_dst, rng);
        const TransferOperator op(src, dst, rcfg, kSolver);
        const auto field = generate_field(FieldKind::RandSmooth, params, src,
                                          static_cast<std::uint64_t>(trial));
        const double m = min_det(op.transfer_tensor_svd(field.tensor));
        global_min = std::min(global_min, m);
        if (!(m > 0.0))
          return {false, "trial " + std::to_string(trial) +
                             " produced min det = " + std::to_string(m)};
        break;
      } catch (const NumericalError&) {
        // Uncovered destination: outside the positivity hypothesis; redraw.
        if (++resamples > 20) return {false, "too many uncovered-cloud redraws"};
        if (attempt > 5) return {false, "persistent coverage failure"};
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%d/%d trials min det > 0 (smallest %.3e, %d coverage redraws)",
                kTrials, kTrials, global_min, resamples);
  return {true, buf};
}

// ---------------------------------------------------------------- C2
Outcome determinant_factorization() {
  std::mt19937_64 rng(2);
  double worst = 0.0;
  for (int rep = 0; rep < 3; ++rep) {
    const PointSet src = random_source(800, rng);
    const PointSet dst = random_interior_destination(5000, rng);
    const TransferOperator op(src, dst, RadiusConfig{2, 2.0}, kSolver);
    FieldParams params;
    params.amplitude = 0.5 + 0.1 * rep;
    params.modes = 3;
    const auto field =
        generate_field(FieldKind::RandSmooth, params, src, 40 + static_cast<std::uint64_t>(rep));
    TransferOperator::SvdInfo info;
    const auto out = op.transfer_tensor_svd(field.tensor, &info);
    for (std::size_t i = 0; i < dst.size(); ++i) {
      const double expect = std::exp(info.log_sigma_sum[i]);
      worst = std::max(worst, std::abs(det3(out.samples[i]) - expect) / expect);
    }
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "max relative deviation %.3e (limit 1e-13)", worst);
  return {worst <= 1e-13, buf};
}

// ---------------------------------------------------------------- C3
Outcome constant_reproduction() {
  const PointSet src = grid_cloud(7, 1);
  const PointSet dst = grid_cloud(11, 1, 0.1, 0.9);
  double worst = 0.0;

  {
    const TransferOperator op(src, dst, kScalarRadiusDefault, kSolver);
    const std::vector<double> scalar(src.size(), 0.8);
    for (double v : op.transfer_scalar(scalar)) worst = std::max(worst, std::abs(v - 0.8));

    const Vec3 vec(0.3, -1.1, 0.7);
    for (int c = 0; c < 3; ++c) {
      const std::vector<double> comp(src.size(), vec(c));
      for (double v : op.transfer_scalar(comp))
        worst = std::max(worst, std::abs(v - vec(c)));
    }
  }

  Tensor3 f0;
  f0 << 1.15, 0.2, -0.1, 0.05, 0.9, 0.1, -0.05, 0.15, 1.1;
  const TensorField constant{src, std::vector<Tensor3>(src.size(), f0)};
  {
    const TransferOperator op(src, dst, RadiusConfig{2, 2.0}, kSolver);
    for (const auto& f : op.transfer_tensor_euclidean(constant).samples)
      worst = std::max(worst, (f - f0).cwiseAbs().maxCoeff());
    for (const auto& f : op.transfer_tensor_svd(constant).samples)
      worst = std::max(worst, (f - f0).cwiseAbs().maxCoeff());
  }
  {
    const TransferOperator op(src, dst, RadiusConfig{5, 3.0}, kSolver);
    const std::vector<Vec3> disp(src.size(), Vec3(0.4, -0.2, 0.9));
    for (const auto& f : op.transfer_displacement_gradient(disp).samples)
      worst = std::max(worst, (f - Tensor3::Identity()).cwiseAbs().maxCoeff());
  }

  char buf[120];
  std::snprintf(buf, sizeof buf, "max absolute deviation %.3e (limit 1e-9)", worst);
  return {worst <= 1e-9, buf};
}

// ---------------------------------------------------------------- C4
Outcome rotation_field_exactness() {
  const PointSet src = grid_cloud(8, 1);
  const PointSet dst = grid_cloud(14, 1, 0.08, 0.92);
  const TransferOperator op(src, dst, RadiusConfig{2, 2.0}, kSolver);

  double worst = 0.0;
  {
    // Varying axis and angle, all angles below pi/2.
    TensorField field{src, std::vector<Tensor3>(src.size())};
    for (std::size_t i = 0; i < src.size(); ++i)
      field.samples[i] = axis_rotation(2, 0.9 * (src[i].x - 0.5)) *
                         axis_rotation(0, 0.7 * (src[i].y - 0.5));
    for (const auto& f : op.transfer_tensor_svd(field).samples)
      worst = std::max(worst, std::abs(det3(f) - 1.0));
  }
  {
    FieldParams params;
    params.rate = 1.4;
    const auto field = generate_field(FieldKind::Twist, params, src, 0).tensor;
    for (const auto& f : op.transfer_tensor_svd(field).samples)
      worst = std::max(worst, std::abs(det3(f) - 1.0));
  }

  char buf[120];
  std::snprintf(buf, sizeof buf, "max |det - 1| = %.3e (limit 1e-12)", worst);
  return {worst <= 1e-12, buf};
}

// ---------------------------------------------------------------- C5
Outcome method_contrast() {
  const PointSet src = grid_cloud(8, 1);
  const PointSet dst = grid_cloud(16, 1, 0.05, 0.95);
  const TransferOperator op(src, dst, RadiusConfig{2, 2.0}, kSolver);
  const auto field = generate_field(FieldKind::RotBlend, {}, src, 0).tensor;

  const double euclid_min = min_det(op.transfer_tensor_euclidean(field));
  double svd_worst = 0.0;
  for (const auto& f : op.transfer_tensor_svd(field).samples)
    svd_worst = std::max(svd_worst, std::abs(det3(f) - 1.0));

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "euclidean min det %.3e (limit 0.1); svd max |det-1| %.3e (limit 1e-12)",
                euclid_min, svd_worst);
  return {euclid_min <= 0.1 && svd_worst <= 1e-12, buf};
}

// ---------------------------------------------------------------- C6
Outcome preconditioner_effectiveness() {
  std::mt19937_64 rng(6);
  const PointSet src = random_source(2000, rng);
  const NeighborIndex index(src);
  const auto radii = adaptive_radii(index, RadiusConfig{2, 2.0});
  const auto phi_int = assemble_interp_matrix(index, radii);
  const auto precond =
      build_cardinal_preconditioner(phi_int, src, radii, default_inner_config());

  std::vector<double> b(src.size());
  for (std::size_t i = 0; i < src.size(); ++i)
    b[i] = std::sin(3.0 * src[i].x) + src[i].y * src[i].z;

  const auto plain = gmres(phi_int, b, kSolver);
  const auto prec = gmres(phi_int, b, precond, kSolver);

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "preconditioned %d iters vs unpreconditioned %d (need <= 50%%)",
                prec.stats.iterations, plain.stats.iterations);
  return {prec.stats.converged &&
              2 * prec.stats.iterations <= plain.stats.iterations,
          buf};
}

// ---------------------------------------------------------------- C7
Outcome alignment_gauge_invariance() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  std::uniform_int_distribution<int> coin(0, 1);

  double worst_rec = 0.0;
  for (int k = 0; k < 10000; ++k) {
    Tensor3 f;
    do {
      f = Tensor3::Identity();
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) f(i, j) += u(rng);
    } while (det3(f) <= 0.05);

    const RawSVD raw = svd3(f);
    const AlignedSVD a = align_svd(raw);

    // Random re-gauge: simultaneous permutation plus paired sign flips.
    std::array<int, 3> perm{0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), rng);
    RawSVD g;
    for (int c = 0; c < 3; ++c) {
      const double s = coin(rng) ? -1.0 : 1.0;
      g.U.col(c) = s * raw.U.col(perm[static_cast<std::size_t>(c)]);
      g.V.col(c) = s * raw.V.col(perm[static_cast<std::size_t>(c)]);
      g.sigma(c) = raw.sigma(perm[static_cast<std::size_t>(c)]);
    }
    const AlignedSVD b = align_svd(g);

    const bool same = (a.U.array() == b.U.array()).all() &&
                      (a.V.array() == b.V.array()).all() &&
                      (a.sigma.array() == b.sigma.array()).all() &&
                      a.qU == b.qU && a.qV == b.qV;
    if (!same) return {false, "gauge-dependent output at case " + std::to_string(k)};

    const Tensor3 rec = a.U * a.sigma.asDiagonal() * a.V.transpose();
    worst_rec = std::max(worst_rec, (rec - f).norm() / f.norm());
  }
  char buf[140];
  std::snprintf(buf, sizeof buf,
                "10000 cases bitwise invariant, max reconstruction error %.3e", worst_rec);
  return {worst_rec < 1e-12, buf};
}

// ---------------------------------------------------------------- C8
Outcome quaternion_round_trips() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  auto random_axis = [&]() {
    Eigen::Vector3d axis;
    do {
      axis = Eigen::Vector3d(u(rng), u(rng), u(rng));
    } while (axis.norm() < 1e-3);
    return axis.normalized();
  };

  double worst = 0.0;
  auto check = [&](const Eigen::Matrix3d& R) {
    const Quaternion q = rotation_to_quaternion(R);
    worst = std::max(worst, (quaternion_to_rotation(q) - R).norm());
  };

  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  for (int k = 0; k < 10000; ++k)
    check(Eigen::AngleAxisd(ang(rng), random_axis()).toRotationMatrix());
  for (int k = 0; k < 500; ++k)
    for (const double eps : {0.0, 1e-9, 1e-7, 1e-6}) {
      check(Eigen::AngleAxisd(eps, random_axis()).toRotationMatrix());
      check(Eigen::AngleAxisd(std::numbers::pi - eps, random_axis()).toRotationMatrix());
    }

  char buf[120];
  std::snprintf(buf, sizeof buf, "max round-trip error %.3e (limit 1e-12)", worst);
  return {worst <= 1e-12, buf};
}

// ---------------------------------------------------------------- C9
Outcome gradient_oracle() {
  const PointSet src = grid_cloud(12, 1);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.15, 0.85);
  std::vector<Point3> pts(100);
  for (auto& p : pts) p = Point3{u(rng), u(rng), u(rng)};
  const PointSet dst = PointSet::destination(std::move(pts));

  const TransferOperator op(src, dst, RadiusConfig{5, 3.0}, kSolver);

  // Displacement with gradients bounded away from zero everywhere.
  auto displacement = [](const Point3& p) {
    return Vec3(0.10 * std::sin(2.0 * p.x + 0.3) + 0.05 * p.y,
                0.08 * std::cos(1.5 * p.y) + 0.04 * p.z,
                0.06 * std::sin(1.7 * p.z + 0.5) + 0.05 * p.x);
  };
  std::vector<Vec3> disp(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) disp[i] = displacement(src[i]);

  const auto out = op.transfer_displacement_gradient(disp);

  const double h = 1e-5;
  double worst = 0.0;
  std::vector<double> comp(src.size());
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < src.size(); ++i) comp[i] = disp[i](c);
    const Interpolant f = op.build_scalar_interpolant(comp);
    for (std::size_t i = 0; i < dst.size(); ++i) {
      Vec3 fd;
      for (int a = 0; a < 3; ++a) {
        Point3 xp = dst[i], xm = dst[i];
        (a == 0 ? xp.x : a == 1 ? xp.y : xp.z) += h;
        (a == 0 ? xm.x : a == 1 ? xm.y : xm.z) -= h;
        fd(a) = (op.rescaled_value_at(f, xp) - op.rescaled_value_at(f, xm)) / (2.0 * h);
      }
      Vec3 analytic;
      for (int a = 0; a < 3; ++a)
        analytic(a) = out.samples[i](c, a) - (c == a ? 1.0 : 0.0);
      worst = std::max(worst, (analytic - fd).norm() / fd.norm());
    }
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "max relative gradient mismatch %.3e (limit 1e-6)",
                worst);
  return {worst <= 1e-6, buf};
}

// ---------------------------------------------------------------- C10
Outcome convergence_trend() {
  const PointSet dst = grid_cloud(8, 1, 0.15, 0.85);
  FieldParams params;
  params.amplitude = 0.4;

  std::vector<double> errs;
  for (const int cells : {6, 12, 24}) {
    const PointSet src = grid_cloud(cells, 1);
    const TransferOperator op(src, dst, RadiusConfig{2, 2.0}, kSolver);
    const auto gen = generate_field(FieldKind::Stretch, params, src, 0);
    const auto out = op.transfer_tensor_svd(gen.tensor);
    double err = 0.0;
    for (std::size_t i = 0; i < dst.size(); ++i)
      err = std::max(err, (out.samples[i] - gen.truth(dst[i])).cwiseAbs().maxCoeff());
    errs.push_back(err);
  }

  char buf[160];
  std::snprintf(buf, sizeof buf, "max component error: 6^3 %.3e > 12^3 %.3e > 24^3 %.3e",
                errs[0], errs[1], errs[2]);
  return {errs[0] > errs[1] && errs[1] > errs[2], buf};
}

// ---------------------------------------------------------------- C11 (soft)
Outcome scaling_analogue(bool& soft_pass) {
  using clock = std::chrono::steady_clock;
  const PointSet src = grid_cloud(12, 1);      // 1728 sources
  const PointSet dst = grid_cloud(24, 2);      // 110592 destinations

  const auto t0 = clock::now();
  const TransferOperator op(src, dst, RadiusConfig{2, 2.0}, kSolver);
  const double init_ms =
      std::chrono::duration<double, std::milli>(clock::now() - t0).count();

  FieldParams params;
  params.amplitude = 0.3;
  const auto field = generate_field(FieldKind::Stretch, params, src, 0).tensor;

  auto evaluate_ms = [&](int threads) {
    set_max_threads(threads);
    double best = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < 3; ++rep) {
      const auto t1 = clock::now();
      const auto out = op.transfer_tensor_svd(field);
      best = std::min(
          best, std::chrono::duration<double, std::milli>(clock::now() - t1).count());
    }
    return best;
  };

  const double t1 = evaluate_ms(1);
  const double t2 = evaluate_ms(2);
  const double t4 = evaluate_ms(4);
  set_max_threads(0);

  char buf[240];
  std::snprintf(buf, sizeof buf,
                "init %.0f ms; evaluate %.0f/%.0f/%.0f ms at 1/2/4 threads "
                "(4-thread ratio %.2f, soft target <= 0.50)",
                init_ms, t1, t2, t4, t4 / t1);
  soft_pass = t4 <= 0.5 * t1;
  return {true, buf}; // soft criterion: never a hard failure
}

// ---------------------------------------------------------------- C12
Outcome assembly_oracle() {
  auto phi_ref = [](double t, double r) {
    return std::pow(std::max(1.0 - t / r, 0.0), 4) * (1.0 + 4.0 * t / r);
  };

  std::mt19937_64 rng(12);
  double worst = 0.0;
  for (const std::size_t n : {60UL, 150UL, 300UL}) {
    const PointSet src = random_source(n, rng);
    const PointSet dst = random_interior_destination(2 * n, rng);
    const NeighborIndex index(src);
    const auto radii = adaptive_radii(index, RadiusConfig{2, 2.0});
    const auto phi_int = assemble_interp_matrix(index, radii);
    const auto phi_eval = assemble_eval_matrix(dst, index, radii);
    const auto precond = build_cardinal_preconditioner(phi_int, src, radii);

    auto check_matrix = [&](const SparseMatrix& mat, const PointSet& rows) {
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const double t = distance(rows[i], src[j]);
          const double expect = t < radii[j] ? phi_ref(t, radii[j]) : 0.0;
          const double got = mat.coeff(static_cast<int>(i), static_cast<int>(j));
          worst = std::max(worst, std::abs(got - expect));
          if (t >= radii[j] && got != 0.0) worst = std::max(worst, 1.0);
        }
    };
    check_matrix(phi_int, src);
    check_matrix(phi_eval, dst);

    // Dense reference for P^{-1}: Gauss-Jordan on each local system.
    std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double t = distance(src[i], src[j]);
        if (t < radii[j]) dense[i][j] = phi_ref(t, radii[j]);
      }
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::size_t> S;
      for (std::size_t j = 0; j < n; ++j)
        if (dense[i][j] != 0.0) S.push_back(j);
      const std::size_t ni = S.size();
      Eigen::MatrixXd L(ni, ni);
      Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ni));
      for (std::size_t l = 0; l < ni; ++l) {
        if (S[l] == i) e(static_cast<Eigen::Index>(l)) = 1.0;
        for (std::size_t m = 0; m < ni; ++m) {
          const double t = distance(src[S[l]], src[S[m]]);
          L(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(m)) =
              t < radii[S[m]] ? phi_ref(t, radii[S[m]]) : 0.0;
        }
      }
      const Eigen::VectorXd lambda = L.fullPivLu().solve(e);
      for (std::size_t m = 0; m < ni; ++m) {
        const double got =
            precond.coeff(static_cast<int>(S[m]), static_cast<int>(i));
        const double expect = lambda(static_cast<Eigen::Index>(m));
        worst = std::max(worst,
                         std::abs(got - expect) / std::max(1.0, std::abs(expect)));
      }
    }
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "max deviation from dense reference %.3e (limit 1e-13)",
                worst);
  return {worst <= 1e-13, buf};
}

} // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
    bool soft = false;
  };

  bool c11_soft_pass = false;
  const std::vector<Criterion> criteria{
      {1, "positivity over randomized transfers", positivity_trials},
      {2, "determinant equals product of exponentiated log-sigmas",
       determinant_factorization},
      {3, "constant fields transfer exactly", constant_reproduction},
      {4, "pure-rotation fields keep det = 1", rotation_field_exactness},
      {5, "rotation-blend contrast: Euclidean collapses, SVD does not",
       method_contrast},
      {6, "cardinal preconditioner halves GMRES iterations",
       preconditioner_effectiveness},
      {7, "alignment is gauge invariant", alignment_gauge_invariance},
      {8, "quaternion round trips at 1e-12", quaternion_round_trips},
      {9, "analytic gradient matches finite differences", gradient_oracle},
      {10, "error decreases under source refinement", convergence_trend},
      {11, "evaluate phase scales with threads",
       [&c11_soft_pass] { return scaling_analogue(c11_soft_pass); }, true},
      {12, "assembled matrices match dense references", assembly_oracle},
  };

  int hard_failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const char* tag = o.pass ? (c.soft && !c11_soft_pass ? "WARN" : "PASS")
                             : (c.soft ? "WARN" : "FAIL");
    if (!o.pass && !c.soft) ++hard_failures;
    std::printf("[%s] C%-2d %s — %s\n", tag, c.id, c.title, o.detail.c_str());
    std::fflush(stdout);
  }

  if (hard_failures == 0)
    std::printf("acceptance: all hard criteria passed\n");
  else
    std::printf("acceptance: %d hard criteria FAILED\n", hard_failures);
  return hard_failures == 0 ? 0 : 1;
}
