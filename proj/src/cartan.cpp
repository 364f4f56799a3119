#include "gbs/cartan.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <mpfr.h>

namespace gbs {

namespace {

constexpr mpfr_prec_t kPrecision = 256;

class Mpfr {
 public:
  Mpfr() { mpfr_init2(v_, kPrecision); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

struct Interval {
  Mpfr lo;
  Mpfr hi;
};

void set_rational(Interval& out, const Rational& q) {
  mpfr_set_q(out.lo.get(), q.mpq().get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.hi.get(), q.mpq().get_mpq_t(), MPFR_RNDU);
}

}  // namespace

CartanProjection cartan_projection(const QMatrix& m) {
  if (m.dim() != 2) throw std::invalid_argument("Cartan projection needs a 2x2 matrix");
  Rational det = determinant(m);
  if (det.is_zero()) throw std::domain_error("matrix is singular");

  // sigma_i^2 are the roots of x^2 - T x + D with T = tr(m^T m), D = det(m)^2.
  Rational trace(0);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) trace += m(i, j) * m(i, j);
  Rational det_sq = det * det;
  Rational disc = trace * trace - Rational(4) * det_sq;

  Interval t, root, s1sq, logs1sq, logd;
  set_rational(t, trace);
  set_rational(root, disc);
  mpfr_sqrt(root.lo.get(), root.lo.get(), MPFR_RNDD);
  mpfr_sqrt(root.hi.get(), root.hi.get(), MPFR_RNDU);

  // sigma1^2 = (T + sqrt(disc)) / 2, monotone increasing in both inputs.
  mpfr_add(s1sq.lo.get(), t.lo.get(), root.lo.get(), MPFR_RNDD);
  mpfr_add(s1sq.hi.get(), t.hi.get(), root.hi.get(), MPFR_RNDU);
  mpfr_div_2ui(s1sq.lo.get(), s1sq.lo.get(), 1, MPFR_RNDD);
  mpfr_div_2ui(s1sq.hi.get(), s1sq.hi.get(), 1, MPFR_RNDU);

  mpfr_log(logs1sq.lo.get(), s1sq.lo.get(), MPFR_RNDD);
  mpfr_log(logs1sq.hi.get(), s1sq.hi.get(), MPFR_RNDU);

  set_rational(logd, det_sq);
  mpfr_log(logd.lo.get(), logd.lo.get(), MPFR_RNDD);
  mpfr_log(logd.hi.get(), logd.hi.get(), MPFR_RNDU);

  // log sigma1 = log(sigma1^2)/2 ; log sigma2 = (log D - log sigma1^2)/2
  Interval l1, l2;
  mpfr_div_2ui(l1.lo.get(), logs1sq.lo.get(), 1, MPFR_RNDD);
  mpfr_div_2ui(l1.hi.get(), logs1sq.hi.get(), 1, MPFR_RNDU);
  mpfr_sub(l2.lo.get(), logd.lo.get(), logs1sq.hi.get(), MPFR_RNDD);
  mpfr_sub(l2.hi.get(), logd.hi.get(), logs1sq.lo.get(), MPFR_RNDU);
  mpfr_div_2ui(l2.lo.get(), l2.lo.get(), 1, MPFR_RNDD);
  mpfr_div_2ui(l2.hi.get(), l2.hi.get(), 1, MPFR_RNDU);

  CartanProjection out;
  double bound = 0;
  auto midpoint = [&bound](Interval& iv) {
    Mpfr mid;
    mpfr_add(mid.get(), iv.lo.get(), iv.hi.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    double d = mpfr_get_d(mid.get(), MPFR_RNDN);
    // distance from the double to either end of the enclosure
    Mpfr err;
    mpfr_set_d(err.get(), d, MPFR_RNDN);
    Mpfr e1, e2;
    mpfr_sub(e1.get(), iv.hi.get(), err.get(), MPFR_RNDU);
    mpfr_sub(e2.get(), err.get(), iv.lo.get(), MPFR_RNDU);
    double e = std::max(mpfr_get_d(e1.get(), MPFR_RNDU), mpfr_get_d(e2.get(), MPFR_RNDU));
    bound = std::max(bound, std::abs(e));
    return d;
  };
  out.log_sigma1 = midpoint(l1);
  out.log_sigma2 = midpoint(l2);
  out.error_bound = bound;
  return out;
}

}  // namespace gbs
