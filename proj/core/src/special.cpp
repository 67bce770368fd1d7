#include "dirac2d/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "dirac2d/errors.hpp"

namespace dirac2d::special {

double laguerre(int n, double alpha, double x) {
  if (n < 0) throw DomainError("laguerre: n must be >= 0");
  if (!(alpha > -1.0)) throw DomainError("laguerre: alpha must exceed -1");
  if (n == 0) return 1.0;
  const long double a = alpha;
  const long double xl = x;
  long double prev = 1.0L;
  long double curr = 1.0L + a - xl;
  for (int k = 2; k <= n; ++k) {
    const long double next = ((2.0L * k - 1.0L + a - xl) * curr - (k - 1.0L + a) * prev) / k;
    prev = curr;
    curr = next;
  }
  return static_cast<double>(curr);
}

double laguerre_series(int n, double alpha, double x) {
  if (n < 0) throw DomainError("laguerre_series: n must be >= 0");
  if (n > 30) throw Overflow("laguerre_series: n > 30 overflows the factorial terms");
  if (!(alpha > -1.0)) throw DomainError("laguerre_series: alpha must exceed -1");
  const long double a = alpha;
  const long double xl = x;
  long double sum = 0.0L;
  for (int k = 0; k <= n; ++k) {
    // C(n + alpha, n - k) = prod_{i=1}^{n-k} (alpha + k + i) / i
    long double binom = 1.0L;
    for (int i = 1; i <= n - k; ++i) binom *= (a + k + i) / i;
    long double term = binom;
    for (int i = 1; i <= k; ++i) term *= xl / i;
    sum += (k % 2 == 0) ? term : -term;
  }
  return static_cast<double>(sum);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
  }
  // Lanczos approximation, g = 7, nine terms (Godfrey's coefficient set).
  static constexpr std::array<double, 9> kCoef = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double kG = 7.0;
  const double z = x - 1.0;
  double series = kCoef[0];
  for (std::size_t i = 1; i < kCoef.size(); ++i) series += kCoef[i] / (z + static_cast<double>(i));
  const double t = z + kG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426891338, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  int depth;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class G>
Segment kronrod(const G& g, double lo, double hi, int depth) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = g(center);
  double kronrod_sum = fc * kWgk[7];
  double gauss_sum = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double pair = g(center - dx) + g(center + dx);
    kronrod_sum += kWgk[j] * pair;
    if (j % 2 == 1) gauss_sum += kWg[j / 2] * pair;
  }
  return {lo, hi, kronrod_sum * half, std::abs((kronrod_sum - gauss_sum) * half), depth};
}

}  // namespace

double integrate_halfline(const std::function<double(double)>& f, double rel_tol,
                          double abs_tol) {
  constexpr int kMaxSegments = 4000;
  constexpr int kMaxDepth = 60;

  auto mapped = [&f](double t) {
    const double one_minus = 1.0 - t;
    const double x = t / one_minus;
    const double value = f(x) / (one_minus * one_minus);
    if (!std::isfinite(value)) {
      // Far tail of a decaying integrand: exp underflow times a huge Jacobian.
      if (x > 1e6) return 0.0;
      throw DomainError("integrate_halfline: integrand is not finite");
    }
    return value;
  };

  std::priority_queue<Segment> heap;
  heap.push(kronrod(mapped, 0.0, 1.0, 0));
  double total = heap.top().value;
  double total_error = heap.top().error;
  int segments = 1;
  const double eps_floor = 50.0 * std::numeric_limits<double>::epsilon();

  while (total_error > std::max({abs_tol, rel_tol * std::abs(total), eps_floor * std::abs(total)})) {
    if (segments >= kMaxSegments) throw NoConvergence("integrate_halfline: segment budget exhausted");
    Segment worst = heap.top();
    heap.pop();
    if (worst.depth >= kMaxDepth) throw NoConvergence("integrate_halfline: depth limit reached");
    const double mid = 0.5 * (worst.lo + worst.hi);
    Segment left = kronrod(mapped, worst.lo, mid, worst.depth + 1);
    Segment right = kronrod(mapped, mid, worst.hi, worst.depth + 1);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++segments;
  }
  // Re-sum to shed the drift of the running updates.
  double resum = 0.0;
  while (!heap.empty()) {
    resum += heap.top().value;
    heap.pop();
  }
  return resum;
}

}  // namespace dirac2d::special
