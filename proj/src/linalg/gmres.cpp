#include "dpp/linalg/gmres.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dpp/timer.hpp"

namespace dpp::linalg {

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::HappyBreakdown: return "happy-breakdown";
    case Termination::Stagnation: return "stagnation";
    case Termination::MaxIterations: return "max-iterations";
  }
  return "unknown";
}

KrylovStats gmres(const LinearOperator& a, const LinearOperator* m, std::span<const double> b, Vector& x,
                  const GmresOptions& opt) {
  if (!(opt.rtol > 0.0)) throw std::invalid_argument("gmres: rtol must be positive");
  if (opt.restart < 1 || opt.max_iterations < 0) throw std::invalid_argument("gmres: bad restart/max_iterations");
  const int n = a.size();
  if (static_cast<int>(b.size()) != n) throw std::invalid_argument("gmres: right-hand side size mismatch");
  if (m && m->size() != n) throw std::invalid_argument("gmres: preconditioner size mismatch");
  if (x.empty()) x.assign(n, 0.0);
  if (static_cast<int>(x.size()) != n) throw std::invalid_argument("gmres: initial guess size mismatch");

  Stopwatch clock;
  KrylovStats st;
  auto precondition = [&](std::span<const double> in, std::span<double> out) {
    if (m) m->apply(in, out);
    else std::copy(in.begin(), in.end(), out.begin());
  };

  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    st.converged = true;
    st.termination = Termination::Converged;
    st.seconds = clock.seconds();
    return st;
  }

  Vector r(n), z(n), w(n), tmp(n);
  auto true_residual = [&]() {
    a.apply(x, r);
    for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
    return norm2(r) / bnorm;
  };

  precondition(b, z);
  double mbnorm = norm2(z);
  if (mbnorm == 0.0) mbnorm = 1.0;

  const int k = opt.restart;
  std::vector<Vector> v(k + 1, Vector(n));
  std::vector<double> h(static_cast<std::size_t>(k + 1) * k, 0.0);
  auto H = [&](int i, int j) -> double& { return h[static_cast<std::size_t>(i) * k + j]; };
  std::vector<double> cs(k), sn(k), g(k + 1), y(k);

  double target = opt.rtol;
  double rel = true_residual();
  double prev_rel = rel;
  st.relative_residual = rel;
  if (rel <= opt.rtol) {
    st.converged = true;
    st.termination = Termination::Converged;
    st.seconds = clock.seconds();
    return st;
  }

  while (true) {
    precondition(r, z);
    const double beta = norm2(z);
    if (beta == 0.0) {
      st.termination = Termination::Stagnation;
      break;
    }
    for (int i = 0; i < n; ++i) v[0][i] = z[i] / beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;

    int j = 0;
    bool happy = false, inner_done = false;
    for (; j < k && st.iterations < opt.max_iterations; ++j) {
      a.apply(v[j], tmp);
      precondition(tmp, w);
      ++st.iterations;
      const double wnorm0 = norm2(w);
      for (int i = 0; i <= j; ++i) {
        H(i, j) = dot(w, v[i]);
        axpy(-H(i, j), v[i], w);
      }
      // one reorthogonalization pass when cancellation is severe
      double wnorm = norm2(w);
      if (wnorm < 0.5 * wnorm0) {
        for (int i = 0; i <= j; ++i) {
          const double c = dot(w, v[i]);
          H(i, j) += c;
          axpy(-c, v[i], w);
        }
        wnorm = norm2(w);
      }
      H(j + 1, j) = wnorm;
      for (int i = 0; i < j; ++i) {
        const double t = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
        H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
        H(i, j) = t;
      }
      const double denom = std::hypot(H(j, j), H(j + 1, j));
      cs[j] = denom == 0.0 ? 1.0 : H(j, j) / denom;
      sn[j] = denom == 0.0 ? 0.0 : H(j + 1, j) / denom;
      H(j, j) = cs[j] * H(j, j) + sn[j] * H(j + 1, j);
      H(j + 1, j) = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];
      const double prel = std::abs(g[j + 1]) / mbnorm;
      st.residual_history.push_back(prel);
      if (wnorm <= 1e-14 * std::max(1.0, wnorm0)) {
        happy = true;
        ++j;
        break;
      }
      if (prel <= target) {
        inner_done = true;
        ++j;
        break;
      }
      for (int i = 0; i < n; ++i) v[j + 1][i] = w[i] / wnorm;
    }
    (void)inner_done;

    // back substitution on the j x j triangle
    for (int i = j - 1; i >= 0; --i) {
      double s = g[i];
      for (int c = i + 1; c < j; ++c) s -= H(i, c) * y[c];
      y[i] = H(i, i) == 0.0 ? 0.0 : s / H(i, i);
    }
    for (int i = 0; i < j; ++i) axpy(y[i], v[i], x);

    rel = true_residual();
    st.relative_residual = rel;
    if (rel <= opt.rtol) {
      st.converged = true;
      st.termination = happy ? Termination::HappyBreakdown : Termination::Converged;
      break;
    }
    if (happy) {
      st.termination = Termination::Stagnation;
      break;
    }
    if (st.iterations >= opt.max_iterations) {
      st.termination = Termination::MaxIterations;
      break;
    }
    if (rel >= prev_rel * (1.0 - 1e-12) && j == k) {
      st.termination = Termination::Stagnation;
      break;
    }
    if (std::abs(g[j]) / mbnorm <= target) {
      // preconditioned residual met the target but the true residual did not
      target = std::max(target * std::min(0.5, opt.rtol / rel), 1e-15);
    }
    prev_rel = rel;
    ++st.restarts;
  }
  st.seconds = clock.seconds();
  return st;
}

}  // namespace dpp::linalg
