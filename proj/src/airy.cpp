#include "qtdg/airy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qtdg {

namespace {

using Quad = __float128;

// Ai(0) and -Ai'(0) as unevaluated sums of two doubles
const Quad kC1 = static_cast<Quad>(0.3550280538878172) + static_cast<Quad>(2.05233632436212e-17);
const Quad kC2 = static_cast<Quad>(0.2588194037928068) + static_cast<Quad>(-2.522243111610832e-17);

void check_range(double x) {
  if (!(x >= -12.0 && x <= 2.0))
    throw std::out_of_range("airy_ai argument outside [-12, 2]: " + std::to_string(x));
}

Quad qabs(Quad v) { return v < 0 ? -v : v; }

/// f, f', g, g' of the two power series with Ai = c1 f - c2 g.
void series(double xd, Quad& f, Quad& fp, Quad& g, Quad& gp) {
  const Quad x = xd, x3 = x * x * x;
  Quad a = 1, b = 1;  // coefficients of x^{3k} in f and of x^{3k+1} in g
  Quad p = 1;         // x^{3k}
  f = 1;
  g = x;
  fp = 0;
  gp = 1;
  for (int k = 1; k < 400; ++k) {
    a /= static_cast<Quad>((3 * k - 1) * (3 * k));
    b /= static_cast<Quad>((3 * k) * (3 * k + 1));
    const Quad pm = p * x * x;  // x^{3k-1}
    p *= x3;
    const Quad tf = a * p, tg = b * p * x;
    const Quad tfp = 3 * k * a * pm, tgp = (3 * k + 1) * b * p;
    f += tf;
    g += tg;
    fp += tfp;
    gp += tgp;
    const Quad eps = static_cast<Quad>(1e-36);
    if (qabs(tf) + qabs(tg) + qabs(tfp) + qabs(tgp) <= eps * (1 + qabs(f) + qabs(g)) && k > 3) break;
  }
}

}  // namespace

double airy_ai(double x) {
  check_range(x);
  Quad f, fp, g, gp;
  series(x, f, fp, g, gp);
  return static_cast<double>(kC1 * f - kC2 * g);
}

double airy_ai_prime(double x) {
  check_range(x);
  Quad f, fp, g, gp;
  series(x, f, fp, g, gp);
  return static_cast<double>(kC1 * fp - kC2 * gp);
}

Jet airy_ai(const Jet& z) {
  const int N = z.order();
  const double z0 = z.value();
  // A[k] = Ai^{(k)}(z0), from A[k+2] = z0 A[k] + k A[k-1]
  std::vector<double> A(N + 2, 0.0);
  A[0] = airy_ai(z0);
  if (N >= 1) A[1] = airy_ai_prime(z0);
  for (int k = 0; k + 2 <= N; ++k) A[k + 2] = z0 * A[k] + (k >= 1 ? k * A[k - 1] : 0.0);
  Jet d = z - z0;
  Jet r(N, 0.0);
  double fact = 1.0;
  for (int k = 1; k <= N; ++k) fact *= k;
  for (int k = N; k >= 0; --k) {
    r = r * d + A[k] / fact;
    if (k > 0) fact /= k;
  }
  return r;
}

}  // namespace qtdg
