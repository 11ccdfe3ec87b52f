#include "qrod/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "qrod/errors.hpp"

extern "C" {
void dstevr_(const char* jobz, const char* range, const int* n, double* d, double* e, const double* vl,
             const double* vu, const int* il, const int* iu, const double* abstol, int* m, double* w, double* z,
             const int* ldz, int* isuppz, double* work, const int* lwork, int* iwork, const int* liwork, int* info,
             std::size_t jobz_len, std::size_t range_len);
double dlamch_(const char* cmach, std::size_t len);
}

namespace qrod::numerics {

namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for nodes kKronrodNodes[1], [3], [5] and the centre.
constexpr std::array<double, 4> kGaussWeights = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                                 0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod(const RealFn& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double sum = f(centre - dx) + f(centre + dx);
    kronrod += kKronrodWeights[j] * sum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate(const RealFn& f, double a, double b, QuadratureOptions opts) {
  QuadratureResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Segment> heap;
  Segment first = gauss_kronrod(f, a, b);
  double total = first.value;
  double error = first.error;
  heap.push(first);
  std::size_t intervals = 1;
  while (error > std::max(opts.abs_tol, opts.rel_tol * std::abs(total)) && intervals < opts.max_intervals) {
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = gauss_kronrod(f, worst.a, mid);
    const Segment right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum to shed accumulated cancellation in the running totals.
  total = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.error = error;
  out.intervals = intervals;
  out.converged = error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total)) && std::isfinite(total);
  return out;
}

double integrate_checked(const RealFn& f, double a, double b, QuadratureOptions opts) {
  const auto r = integrate(f, a, b, opts);
  if (!r.converged) {
    throw NumericalError("quadrature did not converge on [" + std::to_string(a) + ", " + std::to_string(b) +
                         "], error estimate " + std::to_string(r.error));
  }
  return r.value;
}

RootResult find_root(const RealFn& f, double lo, double hi, RootOptions opts) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  RootResult out;
  out.f_lo = f_lo;
  out.f_hi = f_hi;
  if (f_lo == 0.0) {
    out.root = lo;
    return out;
  }
  if (f_hi == 0.0) {
    out.root = hi;
    return out;
  }
  if (std::signbit(f_lo) == std::signbit(f_hi) || !std::isfinite(f_lo) || !std::isfinite(f_hi)) {
    throw NumericalError("root not bracketed on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  int it = 0;
  while (hi - lo > opts.bisect_tol * scale && it < opts.max_iterations) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    ++it;
    if (fm == 0.0) {
      out.root = mid;
      out.iterations = it;
      return out;
    }
    if (std::signbit(fm) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
      f_hi = fm;
    }
  }
  // Secant polish inside the bracket, falling back to bisection when it escapes.
  double x = lo - f_lo * (hi - lo) / (f_hi - f_lo);
  while (it < opts.max_iterations) {
    ++it;
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    const double fx = f(x);
    if (fx == 0.0) break;
    if (std::signbit(fx) == std::signbit(f_lo)) {
      lo = x;
      f_lo = fx;
    } else {
      hi = x;
      f_hi = fx;
    }
    const double next = lo - f_lo * (hi - lo) / (f_hi - f_lo);
    const double tol = opts.polish_tol * std::max(1.0, std::abs(x));
    if (std::abs(next - x) < tol || hi - lo < tol) {
      x = next;
      break;
    }
    x = next;
  }
  out.root = std::clamp(x, lo, hi);
  out.iterations = it;
  return out;
}

bool scan_bracket(const RealFn& f, double lo, double hi, int samples, double& out_lo, double& out_hi) {
  double x_prev = lo;
  double f_prev = f(lo);
  for (int i = 1; i <= samples; ++i) {
    const double x = lo + (hi - lo) * i / samples;
    const double fx = f(x);
    if (f_prev == 0.0 || std::signbit(f_prev) != std::signbit(fx)) {
      out_lo = x_prev;
      out_hi = x;
      return true;
    }
    x_prev = x;
    f_prev = fx;
  }
  return false;
}

TridiagonalEigen eig_tridiagonal(std::span<const double> diag, std::span<const double> off, std::size_t first,
                                 std::size_t last, bool want_vectors) {
  const auto n = static_cast<int>(diag.size());
  if (n == 0 || off.size() + 1 != diag.size()) throw InvalidParameter("tridiagonal: inconsistent sizes");
  if (first > last || last >= diag.size()) throw RangeError("tridiagonal: eigen index range out of bounds");

  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(off.begin(), off.end());
  e.push_back(0.0);
  const char jobz = want_vectors ? 'V' : 'N';
  const char range = 'I';
  const int il = static_cast<int>(first) + 1;
  const int iu = static_cast<int>(last) + 1;
  const double vl = 0.0, vu = 0.0;
  const double abstol = dlamch_("S", 1);
  const int count = iu - il + 1;
  int m = 0;
  TridiagonalEigen out;
  out.order = diag.size();
  out.values.resize(diag.size());
  const int ldz = want_vectors ? n : 1;
  if (want_vectors) out.vectors.resize(static_cast<std::size_t>(n) * count);
  std::vector<double> zdummy(1);
  double* z = want_vectors ? out.vectors.data() : zdummy.data();
  std::vector<int> isuppz(2 * static_cast<std::size_t>(std::max(1, count)));
  int info = 0;
  int lwork = -1, liwork = -1;
  double work_query = 0.0;
  int iwork_query = 0;
  dstevr_(&jobz, &range, &n, d.data(), e.data(), &vl, &vu, &il, &iu, &abstol, &m, out.values.data(), z, &ldz,
          isuppz.data(), &work_query, &lwork, &iwork_query, &liwork, &info, 1, 1);
  if (info != 0) throw NumericalError("dstevr workspace query failed, info=" + std::to_string(info));
  lwork = static_cast<int>(work_query);
  liwork = iwork_query;
  std::vector<double> work(static_cast<std::size_t>(lwork));
  std::vector<int> iwork(static_cast<std::size_t>(liwork));
  dstevr_(&jobz, &range, &n, d.data(), e.data(), &vl, &vu, &il, &iu, &abstol, &m, out.values.data(), z, &ldz,
          isuppz.data(), work.data(), &lwork, iwork.data(), &liwork, &info, 1, 1);
  if (info != 0 || m != count) {
    throw NumericalError("dstevr failed, info=" + std::to_string(info) + ", found " + std::to_string(m) + " of " +
                         std::to_string(count));
  }
  out.values.resize(static_cast<std::size_t>(m));
  return out;
}

ComplexTridiagonalLU::ComplexTridiagonalLU(std::vector<complex> diag, std::vector<complex> off) {
  const std::size_t n = diag.size();
  if (n == 0 || off.size() + 1 != n) throw InvalidParameter("complex tridiagonal: inconsistent sizes");
  pivot_.resize(n);
  upper_ = off;
  lower_.resize(n > 0 ? n - 1 : 0);
  pivot_[0] = diag[0];
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(pivot_[i - 1]) == 0.0) throw NumericalError("complex tridiagonal: zero pivot");
    lower_[i - 1] = off[i - 1] / pivot_[i - 1];
    pivot_[i] = diag[i] - lower_[i - 1] * upper_[i - 1];
  }
}

void ComplexTridiagonalLU::solve(std::span<complex> rhs) const {
  const std::size_t n = pivot_.size();
  if (rhs.size() != n) throw InvalidParameter("complex tridiagonal: rhs size mismatch");
  for (std::size_t i = 1; i < n; ++i) rhs[i] -= lower_[i - 1] * rhs[i - 1];
  rhs[n - 1] /= pivot_[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper_[i] * rhs[i + 1]) / pivot_[i];
}

}  // namespace qrod::numerics
