#include "wronsos/rational.hpp"

#include "wronsos/error.hpp"

namespace wronsos {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw Error(ErrorKind::Parse, "invalid rational literal '" + text + "'");
  }
  q.canonicalize();
  return q;
}

Rational approximate(double x, const Integer& max_den) {
  Rational rest(x);
  Integer h_prev = 0, h = 1, k_prev = 1, k = 0;
  while (true) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    Integer k_next = a * k + k_prev;
    if (k_next > max_den) {
      // Largest admissible semiconvergent versus the last convergent.
      Integer t = (max_den - k_prev) / k;
      Rational semi(t * h + h_prev, t * k + k_prev);
      Rational conv(h, k);
      semi.canonicalize();
      conv.canonicalize();
      Rational exact(x);
      return abs(semi - exact) < abs(conv - exact) ? semi : conv;
    }
    Integer h_next = a * h + h_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    Rational frac = rest - Rational(a);
    if (frac == 0) break;
    rest = 1 / frac;
  }
  Rational result(h, k);
  result.canonicalize();
  return result;
}

}  // namespace wronsos
