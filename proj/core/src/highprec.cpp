#include "dioprime/highprec.hpp"

#include <mpfr.h>
#include <quadmath.h>

#include <stdexcept>

#include "dioprime/ddouble.hpp"

namespace dioprime {

namespace {

DoubleDouble from_quad(__float128 q) {
  const double hi = static_cast<double>(q);
  const double lo = static_cast<double>(q - static_cast<__float128>(hi));
  return dd_detail::quick_two_sum(hi, lo);
}

}  // namespace

DoubleDouble pow_dd(std::uint64_t n, double c) {
  return from_quad(powq(static_cast<__float128>(n), static_cast<__float128>(c)));
}

DoubleDouble pow_dd(double t, double c) {
  if (!(t > 0.0)) {
    if (t == 0.0) return DoubleDouble(0.0);
    throw std::domain_error("pow_dd: negative base");
  }
  return from_quad(powq(static_cast<__float128>(t), static_cast<__float128>(c)));
}

namespace highprec {

namespace {

// RAII over mpfr_t.
class Mp {
 public:
  explicit Mp(int bits) { mpfr_init2(v_, bits); }
  ~Mp() { mpfr_clear(v_); }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace

double power_sum_minus(std::span<const std::uint64_t> ns, double c, double target, int bits) {
  Mp acc(bits), term(bits), exp_c(bits), base(bits);
  mpfr_set_d(acc.get(), 0.0, MPFR_RNDN);
  mpfr_set_d(exp_c.get(), c, MPFR_RNDN);
  for (std::uint64_t n : ns) {
    mpfr_set_ui(base.get(), n, MPFR_RNDN);
    mpfr_pow(term.get(), base.get(), exp_c.get(), MPFR_RNDN);
    mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDN);
  }
  mpfr_sub_d(acc.get(), acc.get(), target, MPFR_RNDN);
  return mpfr_get_d(acc.get(), MPFR_RNDN);
}

std::complex<double> exp_sum(std::span<const std::uint64_t> ns, double c, double x, bool log_weights, int bits) {
  Mp re(bits), im(bits), exp_c(bits), base(bits), phase(bits), w(bits), s(bits), co(bits), two_pi(bits);
  mpfr_set_d(re.get(), 0.0, MPFR_RNDN);
  mpfr_set_d(im.get(), 0.0, MPFR_RNDN);
  mpfr_set_d(exp_c.get(), c, MPFR_RNDN);
  mpfr_const_pi(two_pi.get(), MPFR_RNDN);
  mpfr_mul_ui(two_pi.get(), two_pi.get(), 2, MPFR_RNDN);
  for (std::uint64_t n : ns) {
    mpfr_set_ui(base.get(), n, MPFR_RNDN);
    mpfr_pow(phase.get(), base.get(), exp_c.get(), MPFR_RNDN);
    mpfr_mul_d(phase.get(), phase.get(), x, MPFR_RNDN);
    mpfr_frac(phase.get(), phase.get(), MPFR_RNDN);
    mpfr_mul(phase.get(), phase.get(), two_pi.get(), MPFR_RNDN);
    mpfr_sin_cos(s.get(), co.get(), phase.get(), MPFR_RNDN);
    if (log_weights) {
      mpfr_log(w.get(), base.get(), MPFR_RNDN);
      mpfr_mul(s.get(), s.get(), w.get(), MPFR_RNDN);
      mpfr_mul(co.get(), co.get(), w.get(), MPFR_RNDN);
    }
    mpfr_add(re.get(), re.get(), co.get(), MPFR_RNDN);
    mpfr_add(im.get(), im.get(), s.get(), MPFR_RNDN);
  }
  return {mpfr_get_d(re.get(), MPFR_RNDN), mpfr_get_d(im.get(), MPFR_RNDN)};
}

}  // namespace highprec
}  // namespace dioprime
