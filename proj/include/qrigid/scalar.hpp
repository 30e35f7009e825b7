#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace qrigid {

enum class Backend { Exact, Float };

// Trace functionals on M_n, all multiples of the matrix trace Tr:
//   Normalized = Tr/n, Plain = Tr, DeltaForm = n*Tr.
// DeltaForm is the delta-form trace that makes multiplication a coisometry
// (m m* = id) on M_n.
enum class TraceMode { Normalized, Plain, DeltaForm };

inline const char* to_string(TraceMode m) {
  switch (m) {
    case TraceMode::Normalized: return "normalized";
    case TraceMode::Plain: return "plain";
    case TraceMode::DeltaForm: return "delta";
  }
  return "?";
}

inline const char* to_string(Backend b) {
  return b == Backend::Exact ? "exact" : "float";
}

struct TolerancePolicy {
  double rank_rel_tol = 1e-9;  // singular values below rank_rel_tol*sigma_max count as zero
  double cert_margin = 1e-8;   // required sigma_min/sigma_max for a float certificate
  double psd_tol = 1e-10;      // hermiticity / positivity slack
};

// Structural preconditions (tracelessness of decimal-printed inputs) are
// validated against this looser constant; see is_traceless in linalg.hpp.
inline constexpr double kStructureTol = 1e-5;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define QRIGID_DEFINE_ERROR(Name)                   \
  struct Name : Error {                             \
    explicit Name(const std::string& msg)           \
        : Error(std::string(#Name) + ": " + msg) {} \
  }

QRIGID_DEFINE_ERROR(DimensionMismatch);
QRIGID_DEFINE_ERROR(BackendMismatch);
QRIGID_DEFINE_ERROR(NotHermitian);
QRIGID_DEFINE_ERROR(NotTraceless);
QRIGID_DEFINE_ERROR(EmptyTuple);
QRIGID_DEFINE_ERROR(GramSingular);
QRIGID_DEFINE_ERROR(SingularMatrix);
QRIGID_DEFINE_ERROR(DivisionByZero);
QRIGID_DEFINE_ERROR(ExactBackendUnsupported);
QRIGID_DEFINE_ERROR(DegenerateSystem);
QRIGID_DEFINE_ERROR(NormalizationViolated);
QRIGID_DEFINE_ERROR(InvalidGroup);
QRIGID_DEFINE_ERROR(InvalidInput);

#undef QRIGID_DEFINE_ERROR

// Complex number with rational real and imaginary parts (a Gaussian rational).
// All arithmetic is exact. There is deliberately no abs() or sqrt(); exact
// code paths must route through norm_sq().
class ExactScalar {
 public:
  ExactScalar() : re_(0), im_(0) {}
  ExactScalar(long v) : re_(v), im_(0) {}  // NOLINT: implicit by design
  ExactScalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

  static ExactScalar ratio(long num, long den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return ExactScalar(std::move(q), mpq_class(0));
  }

  const mpq_class& real() const { return re_; }
  const mpq_class& imag() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  ExactScalar conj() const { return ExactScalar(re_, -im_); }
  mpq_class norm_sq() const { return re_ * re_ + im_ * im_; }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  ExactScalar& operator+=(const ExactScalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  ExactScalar& operator-=(const ExactScalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  ExactScalar& operator*=(const ExactScalar& o) {
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  ExactScalar& operator/=(const ExactScalar& o) {
    mpq_class d = o.norm_sq();
    if (d == 0) throw DivisionByZero("exact division by zero");
    mpq_class re = (re_ * o.re_ + im_ * o.im_) / d;
    mpq_class im = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
  friend ExactScalar operator-(const ExactScalar& a) { return ExactScalar(-a.re_, -a.im_); }
  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

  std::string to_string() const {
    if (im_ == 0) return re_.get_str();
    return re_.get_str() + (im_ < 0 ? "" : "+") + im_.get_str() + "i";
  }

 private:
  mpq_class re_, im_;
};

using FloatScalar = std::complex<double>;

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<ExactScalar> {
  static constexpr Backend backend = Backend::Exact;
  using Real = mpq_class;  // exact nonnegative magnitudes (squared norms)

  static ExactScalar zero() { return ExactScalar(); }
  static ExactScalar one() { return ExactScalar(1); }
  static ExactScalar from_int(long v) { return ExactScalar(v); }
  static ExactScalar conj(const ExactScalar& s) { return s.conj(); }
  static Real norm_sq(const ExactScalar& s) { return s.norm_sq(); }
  static bool is_zero(const ExactScalar& s) { return s.is_zero(); }
  static ExactScalar div_int(const ExactScalar& s, long k) {
    return s * ExactScalar::ratio(1, k);
  }
  static ExactScalar mul_int(const ExactScalar& s, long k) { return s * ExactScalar(k); }
  static double real_to_double(const Real& r) { return r.get_d(); }
  static std::complex<double> to_complex(const ExactScalar& s) { return s.to_complex(); }
};

template <>
struct ScalarOps<FloatScalar> {
  static constexpr Backend backend = Backend::Float;
  using Real = double;

  static FloatScalar zero() { return {0.0, 0.0}; }
  static FloatScalar one() { return {1.0, 0.0}; }
  static FloatScalar from_int(long v) { return {static_cast<double>(v), 0.0}; }
  static FloatScalar conj(const FloatScalar& s) { return std::conj(s); }
  static Real norm_sq(const FloatScalar& s) { return std::norm(s); }
  static bool is_zero(const FloatScalar& s) { return s.real() == 0.0 && s.imag() == 0.0; }
  static FloatScalar div_int(const FloatScalar& s, long k) {
    return s / static_cast<double>(k);
  }
  static FloatScalar mul_int(const FloatScalar& s, long k) {
    return s * static_cast<double>(k);
  }
  static double real_to_double(Real r) { return r; }
  static std::complex<double> to_complex(const FloatScalar& s) { return s; }
};

// Scales a plain matrix trace to the requested functional. DeltaForm is
// computed as Normalized * n^2 so that the identity tau_delta = n^2 * tau_norm
// holds exactly in both backends, not just up to rounding.
template <class S>
S apply_trace_mode(const S& plain_trace, std::size_t n, TraceMode mode) {
  using Ops = ScalarOps<S>;
  switch (mode) {
    case TraceMode::Plain: return plain_trace;
    case TraceMode::Normalized: return Ops::div_int(plain_trace, static_cast<long>(n));
    case TraceMode::DeltaForm:
      return Ops::mul_int(Ops::div_int(plain_trace, static_cast<long>(n)),
                          static_cast<long>(n * n));
  }
  throw InvalidInput("unknown trace mode");
}

}  // namespace qrigid
