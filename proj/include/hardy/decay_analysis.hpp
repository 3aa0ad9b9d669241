#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hardy/hermite_analysis.hpp"
#include "hardy/registry.hpp"

namespace hardy::decay {

using expansion::CoefficientTable;

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// |f(x)| <= C* exp(-gamma* |x|^2) on the annulus r0 <= |x| <= R.
struct EnvelopeEstimate {
  double gamma_star = 0.0;
  double C_star = 0.0;
  double r0 = 0.5, R = 10.0;
  double r_outer = 0.0;           // largest radius with a usable value
  bool boundary_attained = false; // sup moves to the outer shell at 1.05 gamma*
  std::size_t points = 0;
  double a_half() const { return 2.0 * gamma_star; }  // exp(-a|x|^2/2) convention
  double a_full() const { return gamma_star; }        // exp(-a|x|^2) convention
  std::string to_json() const;
};

// Envelope from samples (|x|, |value|); entries with |value| <= floor are dropped.
EnvelopeEstimate envelope_from_samples(const std::vector<double>& r, const std::vector<double>& absval, double floor,
                                       double r0, double R, double shell);
EnvelopeEstimate hardy_envelope(const FunctionSpec& f, double r0 = 0.5, double R = 10.0);
// Envelope of the (partial) Fourier transform over subset (all axes when empty).
EnvelopeEstimate hardy_envelope_fourier(const FunctionSpec& f, double r0 = 0.5, double R = 10.0,
                                        std::vector<int> subset = {});

// log value = log C + p log x_k - x_k t / 2 with x_k = mult * k + offset
// (mult = 2, offset = n for Hermite levels).
struct Abscissa {
  double mult = 2.0, offset = 1.0;
  double at(int k) const { return mult * k + offset; }
};
inline Abscissa hermite_abscissa(int n) { return {2.0, double(n)}; }

enum class PMode { free, fixed };

struct DecayFit {
  double t = 0.0, p = 0.0, C = 0.0;
  double residual_rms = 0.0;
  double implied_a = 0.0;  // tanh(2t)
  int k_min = 0, k_max = 0;
  std::size_t points = 0;
  bool p_fixed = false;
  bool non_monotone = false;
  std::string to_json() const;
};
DecayFit decay_fit(const CoefficientTable& table, int n, PMode mode, double p = 0.0);
DecayFit decay_fit(const CoefficientTable& table, Abscissa x, PMode mode, double p = 0.0);

struct BoundReport {
  double p = 0.0, t = 0.0;
  double C_min = 0.0;
  int k_at = -1;
  bool holds = false;
  std::vector<int> k;
  std::vector<double> contribution;  // value_k x_k^{-p} exp(x_k t / 2)
  std::string to_json() const;
};
BoundReport bound_check(const CoefficientTable& table, int n, double p, double t);
BoundReport bound_check(const CoefficientTable& table, Abscissa x, double p, double t);
// Contributions already divided by the model; holds iff non-increasing over the tail window.
BoundReport bound_from_contributions(std::vector<int> k, std::vector<double> c, double p, double t);

enum class Theorem { T1_1, T1_2, T1_3, T1_4, T4_1, T5_2 };
std::string to_string(Theorem t);
Theorem theorem_from_string(const std::string& s);

struct TheoremReport {
  Theorem theorem = Theorem::T1_1;
  std::string function_id;
  std::string status;  // "pass", "fail", "inapplicable", "degenerate"
  bool applicable = false;
  bool pass = false;
  double a = 0.0;           // Hardy exponent used, exp(-a|x|^2/2) convention
  double rate = 0.0;        // t (or s) of the bound
  double measured_t = 0.0;  // from the fit, NaN when degenerate
  std::string json;         // full report
};
TheoremReport theorem_check(const FunctionSpec& f, Theorem which);

// Hardy exponent a = min over the envelopes of f and f^ (and partial transforms
// when partial = true), in the exp(-a|x|^2/2) convention.
double hardy_a(const FunctionSpec& f, bool partial = false);

}  // namespace hardy::decay
