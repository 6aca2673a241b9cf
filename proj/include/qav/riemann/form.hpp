#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qav/scalar/sturm.hpp"
#include "qav/torgroup/period_lattice.hpp"

namespace qav {

/// Hermitian form H(z, w) = z^T H conj(w) together with the witness data
/// used to certify positivity of symbolic minors.
struct RiemannFormData {
  ComplexMatrix h;
  std::optional<WitnessPoint> witness;
  /// Interval for the single symbol on which signs are certified by Sturm.
  std::optional<std::pair<Rational, Rational>> bounds;
};

struct AmpleCertificate {
  IntMatrix pairing;                   // A(gamma_i, gamma_j) = Im H(gamma_i, gamma_j)
  std::vector<ComplexVector> cm_frame; // complex basis of Cm
  ComplexMatrix restricted;            // H on Cm in that basis
  std::vector<Scalar> minors;          // leading principal minors, all real
  std::vector<Rational> minor_values;  // at the witness
  std::vector<bool> interval_certified;
};

inline Scalar form_value(const ComplexMatrix& h, const ComplexVector& z, const ComplexVector& w) {
  Scalar acc(0);
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (z[k].is_zero()) continue;
    for (std::size_t l = 0; l < w.size(); ++l)
      if (!h(k, l).is_zero() && !w[l].is_zero()) acc += z[k] * h(k, l) * w[l].conj();
  }
  return acc;
}

/// F^T H conj(F): the form in the coordinates of the columns of F.
inline ComplexMatrix restrict_form(const ComplexMatrix& h, const std::vector<ComplexVector>& frame) {
  ComplexMatrix out(frame.size(), frame.size());
  for (std::size_t a = 0; a < frame.size(); ++a)
    for (std::size_t b = 0; b < frame.size(); ++b) out(a, b) = form_value(h, frame[a], frame[b]);
  return out;
}

namespace detail {

/// Index of the only symbol occurring in x, or -1 (constant) or -2 (several).
inline int single_symbol(const RatFunc& x) {
  int found = -1;
  for (const Poly* p : {&x.num(), &x.den()})
    for (std::size_t k = 0; k < kMaxSymbols; ++k)
      if (p->degree_in(k) > 0) {
        if (found >= 0 && found != static_cast<int>(k)) return -2;
        found = static_cast<int>(k);
      }
  return found;
}

}  // namespace detail

/// Hermitian symmetry, integrality of the alternating pairing on Gamma,
/// and positivity on Cm via leading principal minors.
inline AmpleCertificate check_ample(const RiemannFormData& form, const PeriodLattice& p) {
  const std::size_t n = p.n(), N = p.rank();
  if (form.h.rows() != n || form.h.cols() != n) fail(ErrorKind::DimensionMismatch, "form must be n x n");
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      if (form.h(k, l) != form.h(l, k).conj())
        fail(ErrorKind::NotHermitian, "entry (" + std::to_string(k + 1) + "," + std::to_string(l + 1) + ") differs from the conjugate of its transpose");
  AmpleCertificate cert;
  cert.pairing = IntMatrix(N, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      const Scalar v = form_value(form.h, p.generator(i), p.generator(j));
      const RatFunc& a = v.im();
      if (!a.is_polynomial() || !a.num().is_constant() || a.num().constant_value().get_den() != 1)
        fail(ErrorKind::NonIntegralPairing, "pairing of generators " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                                " is " + to_string(a, p.symbols()));
      cert.pairing(i, j) = a.num().constant_value().get_num();
    }
  const Subspace cm = max_complex_subspace(real_span(p));
  cert.cm_frame = complex_basis(cm);
  cert.restricted = restrict_form(form.h, cert.cm_frame);
  if (form.bounds && form.witness) {
    for (std::size_t k = 0; k < p.symbols().size(); ++k) {
      const Rational& x = (*form.witness)[k];
      if (x < form.bounds->first || x > form.bounds->second)
        fail(ErrorKind::InvalidArgument, "witness lies outside the declared bounds");
    }
  }
  for (std::size_t k = 1; k <= cert.cm_frame.size(); ++k) {
    ComplexMatrix lead(k, k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) lead(a, b) = cert.restricted(a, b);
    const Scalar det = determinant(lead);
    if (!det.is_real()) fail(ErrorKind::InternalInconsistency, "Hermitian minor with nonzero imaginary part");
    Rational value;
    if (det.is_rational()) {
      value = det.re().num().constant_value();
    } else {
      if (!form.witness) fail(ErrorKind::InvalidArgument, "symbolic minor on Cm requires a witness point");
      value = det.re().evaluate(*form.witness);
    }
    if (value <= 0)
      fail(ErrorKind::NotPositiveOnCm, "leading minor " + std::to_string(k) + " is " + to_string(det, p.symbols()) +
                                           (det.is_rational() ? "" : " = " + value.get_str() + " at the witness"));
    bool certified = det.is_rational();
    if (!certified && form.bounds) {
      const int var = detail::single_symbol(det.re());
      if (var >= 0) {
        const auto& [lo, hi] = *form.bounds;
        const auto num = det.re().num().univariate_coefficients(var);
        const auto den = det.re().den().univariate_coefficients(var);
        if (!sturm::root_free(num, lo, hi) || !sturm::root_free(den, lo, hi))
          fail(ErrorKind::NotPositiveOnCm, "leading minor " + std::to_string(k) + " changes sign or has a pole inside the bounds");
        certified = true;
      }
    }
    cert.minors.push_back(det);
    cert.minor_values.push_back(value);
    cert.interval_certified.push_back(certified);
  }
  return cert;
}

}  // namespace qav
