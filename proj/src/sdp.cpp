#include "swapfree/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "swapfree/error.hpp"

namespace swapfree {

SdpProblem::SdpProblem(std::vector<std::size_t> block_sizes) : sizes_(std::move(block_sizes)) {
  for (auto n : sizes_) c_.push_back(Matrix::Zero(n, n));
}

std::size_t SdpProblem::add_constraint(double rhs) {
  rhs_.push_back(rhs);
  offsets_.push_back(entries_.size());
  return rhs_.size() - 1;
}

void SdpProblem::add_entry(std::size_t block, std::size_t row, std::size_t col, double value) {
  require(!rhs_.empty(), "SdpProblem::add_entry before add_constraint");
  require(block < sizes_.size() && row < sizes_[block] && col < sizes_[block],
          "SdpProblem::add_entry index out of range");
  const auto b = static_cast<std::uint32_t>(block);
  entries_.push_back({b, static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(col), value});
  if (row != col)
    entries_.push_back(
        {b, static_cast<std::uint32_t>(col), static_cast<std::uint32_t>(row), value});
  offsets_.back() = entries_.size();
}

const char* to_string(SdpStatus status) {
  switch (status) {
    case SdpStatus::optimal: return "optimal";
    case SdpStatus::max_iter: return "max_iter";
    case SdpStatus::infeasible: return "infeasible";
    case SdpStatus::stopped: return "stopped";
  }
  return "unknown";
}

namespace {

// Matrix types are parameters so that small problems run without heap traffic.
template <int MaxN, int MaxM>
struct SdpKernel {
  using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, MaxN, MaxN>;
  using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, MaxM, 1>;
  using MMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, MaxM, MaxM>;
  using Blocks = std::vector<Mat>;

  static double inner(const Blocks& a, const Blocks& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i].cwiseProduct(b[i]).sum();
    return s;
  }

  static double frobenius(const Blocks& a) { return std::sqrt(inner(a, a)); }

  // A(V)_i = sum over entries a * V(row, col). V need not be symmetric.
  static Vec apply_a(const SdpProblem& p, const Blocks& v) {
    Vec out(p.constraint_count());
    for (std::size_t i = 0; i < p.constraint_count(); ++i) {
      double s = 0.0;
      for (auto e = p.begin(i); e != p.end(i); ++e) s += e->value * v[e->block](e->row, e->col);
      out[i] = s;
    }
    return out;
  }

  // sum_i y_i A_i
  static Blocks apply_at(const SdpProblem& p, const Vec& y) {
    Blocks out;
    for (std::size_t b = 0; b < p.block_count(); ++b)
      out.push_back(Mat::Zero(p.block_size(b), p.block_size(b)));
    for (std::size_t i = 0; i < p.constraint_count(); ++i) {
      if (y[i] == 0.0) continue;
      for (auto e = p.begin(i); e != p.end(i); ++e)
        out[e->block](e->row, e->col) += y[i] * e->value;
    }
    return out;
  }

  // HKM Schur complement M_ij = sum_b tr(A_i X A_j W).
  static MMat schur_complement(const SdpProblem& p, const Blocks& x, const Blocks& w) {
    const auto m = p.constraint_count();
    MMat out(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i; j < m; ++j) {
        double s = 0.0;
        for (auto a = p.begin(i); a != p.end(i); ++a) {
          const Mat& xb = x[a->block];
          const Mat& wb = w[a->block];
          for (auto c = p.begin(j); c != p.end(j); ++c) {
            if (c->block != a->block) continue;
            s += a->value * c->value * xb(a->col, c->row) * wb(c->col, a->row);
          }
        }
        out(i, j) = out(j, i) = s;
      }
    }
    return out;
  }

  static Mat sym(const Mat& a) { return 0.5 * (a + a.transpose()); }

  // Cholesky test of X + alpha dX > 0 on raw column-major storage.
  static bool positive_definite(const Mat& x, const Mat& dx, double alpha,
                                std::vector<double>& work) {
    const auto n = static_cast<std::size_t>(x.rows());
    work.resize(n * n);
    double* a = work.data();
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = j; i < n; ++i) a[j * n + i] = x(i, j) + alpha * dx(i, j);
    for (std::size_t j = 0; j < n; ++j) {
      double d = a[j * n + j];
      for (std::size_t k = 0; k < j; ++k) d -= a[k * n + j] * a[k * n + j];
      if (!(d > 0.0)) return false;
      d = std::sqrt(d);
      a[j * n + j] = d;
      for (std::size_t i = j + 1; i < n; ++i) {
        double v = a[j * n + i];
        for (std::size_t k = 0; k < j; ++k) v -= a[k * n + i] * a[k * n + j];
        a[j * n + i] = v / d;
      }
    }
    return true;
  }

  // Largest alpha in [0, cap] with X + alpha dX >= 0 for every block, assuming
  // X > 0, found by bisection to a relative accuracy of 1e-3 (from below).
  static double max_step(const Blocks& x, const Blocks& dx, double cap) {
    std::vector<double> work;
    auto ok = [&](double alpha) {
      for (std::size_t b = 0; b < x.size(); ++b)
        if (!positive_definite(x[b], dx[b], alpha, work)) return false;
      return true;
    };
    if (ok(cap)) return cap;
    double lo = 0.0, hi = cap;
    for (int it = 0; it < 80 && hi - lo > 1e-3 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (ok(mid) ? lo : hi) = mid;
    }
    return lo;
  }

  static bool factor_blocks(const Blocks& a, std::vector<Eigen::LLT<Mat>>& out) {
    out.clear();
    for (const auto& m : a) {
      out.emplace_back(m);
      if (out.back().info() != Eigen::Success) return false;
    }
    return true;
  }

  static SdpSolution solve(const SdpProblem& p, const SdpOptions& opt) {
    const auto nb = p.block_count();
    const auto m = p.constraint_count();
    Vec b(m);
    for (std::size_t i = 0; i < m; ++i) b[i] = p.rhs(i);

    // Starting point scaled to the data, as in SDPT3.
    Blocks x, s;
    double total_dim = 0.0;
    for (std::size_t blk = 0; blk < nb; ++blk) {
      const auto n = static_cast<double>(p.block_size(blk));
      total_dim += n;
      double ratio = 0.0, amax = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        double f2 = 0.0;
        for (auto e = p.begin(i); e != p.end(i); ++e)
          if (e->block == blk) f2 += e->value * e->value;
        const double f = std::sqrt(f2);
        amax = std::max(amax, f);
        ratio = std::max(ratio, (1.0 + std::abs(b[i])) / (1.0 + f));
      }
      const double xi = std::max({10.0, std::sqrt(n), n * ratio});
      const double eta = std::max({10.0, std::sqrt(n), amax, p.objective(blk).norm()});
      x.push_back(xi * Mat::Identity(p.block_size(blk), p.block_size(blk)));
      s.push_back(eta * Mat::Identity(p.block_size(blk), p.block_size(blk)));
    }
    Vec y = Vec::Zero(m);

    Blocks c;
    for (std::size_t blk = 0; blk < nb; ++blk) c.push_back(p.objective(blk));
    const double b_norm = b.norm();
    const double c_norm = frobenius(c);

    SdpSolution sol;
    std::vector<Eigen::LLT<Mat>> chol_x, chol_s;
    Blocks w(nb), rd(nb), dx(nb), ds(nb), dx_pred(nb), ds_pred(nb), k_term(nb);

    for (std::size_t iter = 0;; ++iter) {
      const Vec rp = b - apply_a(p, x);
      const Blocks aty = apply_at(p, y);
      for (std::size_t blk = 0; blk < nb; ++blk) rd[blk] = c[blk] - aty[blk] - s[blk];
      const double xs = inner(x, s);
      const double mu = xs / total_dim;
      const double pobj = inner(c, x);
      const double dobj = b.dot(y);
      const double pinf = rp.norm() / (1.0 + b_norm);
      const double dinf = frobenius(rd) / (1.0 + c_norm);

      sol.primal_objective = pobj;
      sol.dual_objective = dobj;
      sol.primal_infeasibility = pinf;
      sol.dual_infeasibility = dinf;
      sol.iterations = iter;

      if (std::max(xs, std::abs(pobj - dobj)) <= opt.gap_tol && pinf <= opt.feas_tol &&
          dinf <= opt.feas_tol) {
        sol.status = SdpStatus::optimal;
        break;
      }
      if (iter >= opt.max_iterations) {
        sol.status = SdpStatus::max_iter;
        break;
      }
      if (frobenius(x) > 1e12 || y.cwiseAbs().maxCoeff() > 1e12) {
        sol.status = SdpStatus::infeasible;
        break;
      }
      if (opt.early_stop && iter >= 3) {
        std::vector<Matrix> xm(x.begin(), x.end());
        if (opt.early_stop(xm)) {
          sol.status = SdpStatus::stopped;
          break;
        }
      }
      if (!factor_blocks(x, chol_x) || !factor_blocks(s, chol_s)) {
        sol.status = SdpStatus::max_iter;
        break;
      }
      for (std::size_t blk = 0; blk < nb; ++blk)
        w[blk] = chol_s[blk].solve(Mat::Identity(p.block_size(blk), p.block_size(blk)));

      MMat schur = schur_complement(p, x, w);
      Eigen::LLT<MMat> schur_chol(schur);
      if (schur_chol.info() != Eigen::Success) {
        schur.diagonal().array() += 1e-14 * std::max(1.0, schur.diagonal().maxCoeff());
        schur_chol.compute(schur);
        if (schur_chol.info() != Eigen::Success) {
          sol.status = SdpStatus::max_iter;
          break;
        }
      }

      Blocks x_rd_w(nb);
      for (std::size_t blk = 0; blk < nb; ++blk) x_rd_w[blk] = x[blk] * rd[blk] * w[blk];
      const Vec a_x_rd_w = apply_a(p, x_rd_w);

      // Solves for (dx, dy, ds) given the complementarity target K:
      //   M dy = rp - A(K) + A(X Rd W),  dS = Rd - A^T dy,  dX = sym(K - X dS W).
      auto direction = [&](const Blocks& kt, Blocks& dxo, Vec& dyo, Blocks& dso) {
        const Vec rhs = rp - apply_a(p, kt) + a_x_rd_w;
        dyo = schur_chol.solve(rhs);
        const Blocks atdy = apply_at(p, dyo);
        for (std::size_t blk = 0; blk < nb; ++blk) {
          dso[blk] = rd[blk] - atdy[blk];
          dxo[blk] = sym(kt[blk] - x[blk] * dso[blk] * w[blk]);
        }
      };

      // Predictor (affine scaling).
      for (std::size_t blk = 0; blk < nb; ++blk) k_term[blk] = -x[blk];
      Vec dy_pred;
      direction(k_term, dx_pred, dy_pred, ds_pred);
      const double ap = max_step(x, dx_pred, 1.0);
      const double ad = max_step(s, ds_pred, 1.0);
      double xs_aff = 0.0;
      for (std::size_t blk = 0; blk < nb; ++blk)
        xs_aff += (x[blk] + ap * dx_pred[blk]).cwiseProduct(s[blk] + ad * ds_pred[blk]).sum();
      const double ratio = std::clamp(xs_aff / xs, 0.0, 1.0);
      const double sigma = std::pow(ratio, 3.0);

      // Corrector with the second-order term.
      for (std::size_t blk = 0; blk < nb; ++blk)
        k_term[blk] = sigma * mu * w[blk] - x[blk] - dx_pred[blk] * ds_pred[blk] * w[blk];
      Vec dy;
      direction(k_term, dx, dy, ds);

      const double tau = 0.98;
      const double step_p = tau * max_step(x, dx, 1.0 / tau);
      const double step_d = tau * max_step(s, ds, 1.0 / tau);
      if (step_p < 1e-12 && step_d < 1e-12) {
        sol.status = SdpStatus::max_iter;
        break;
      }
      for (std::size_t blk = 0; blk < nb; ++blk) {
        x[blk] += step_p * dx[blk];
        s[blk] += step_d * ds[blk];
      }
      y += step_d * dy;
    }

    for (std::size_t blk = 0; blk < nb; ++blk) {
      sol.x.push_back(x[blk]);
      sol.s.push_back(s[blk]);
    }
    sol.y = y;
    return sol;
  }
};

}  // namespace

SdpSolution solve_sdp(const SdpProblem& p, const SdpOptions& opt) {
  std::size_t max_block = 0;
  for (std::size_t blk = 0; blk < p.block_count(); ++blk)
    max_block = std::max(max_block, p.block_size(blk));
  if (max_block <= 8 && p.constraint_count() <= 40) return SdpKernel<8, 40>::solve(p, opt);
  if (max_block <= 12 && p.constraint_count() <= 80) return SdpKernel<12, 80>::solve(p, opt);
  return SdpKernel<Eigen::Dynamic, Eigen::Dynamic>::solve(p, opt);
}

}  // namespace swapfree
