// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jfp/gauges.hpp"
#include "jfp/metric.hpp"

namespace jfp {

/// Which ψ-term the integral form feeds d(Sx,Tx) through.
///  rewritten: ψ0(ψ(d(Sx,Tx))), like the other three terms.
///  literal:   ψ0(d(Sx,Tx)), without the inner ψ.
enum class MiddleTerm { rewritten, literal };

/// Plain form uses ψ; integral form uses ψ0∘ψ with ψ0(s) = ∫_0^s φ.
enum class ContractionForm { plain, integral };

/// A candidate ψ-(α,β,γ)-contraction pair (S, T) on a shared domain.
class ContractionPair {
 public:
  ContractionPair(ScalarMap s, ScalarMap t, AlteringDistance psi, GaugeTriple gauges,
                  std::optional<IntegrandPhi> integral_phi = std::nullopt,
                  MiddleTerm middle_term = MiddleTerm::rewritten);

  [[nodiscard]] const ScalarMap& s() const noexcept { return s_; }
  [[nodiscard]] const ScalarMap& t() const noexcept { return t_; }
  [[nodiscard]] const Domain& domain() const noexcept { return s_.domain(); }
  [[nodiscard]] const AlteringDistance& psi() const noexcept { return psi_; }
  [[nodiscard]] const GaugeTriple& gauges() const noexcept { return gauges_; }
  [[nodiscard]] const std::optional<IntegrandPhi>& integral_phi() const noexcept {
    return integral_phi_;
  }
  [[nodiscard]] MiddleTerm middle_term() const noexcept { return middle_term_; }

  /// Breakpoints of S and T together.
  [[nodiscard]] std::vector<double> breakpoints() const;

 private:
  ScalarMap s_;
  ScalarMap t_;
  AlteringDistance psi_;
  GaugeTriple gauges_;
  std::optional<IntegrandPhi> integral_phi_;
  MiddleTerm middle_term_;
};

/// The two sides of the contraction inequality at (x, y), term by term.
struct InequalityTerms {
  double lhs = 0.0;         ///< Ψ(d(Sx,Sy))
  double alpha_term = 0.0;  ///< α(d(Tx,Ty)) Ψ(d(Tx,Ty))
  double beta_term = 0.0;   ///< β(d(Tx,Ty)) Ψ(d(Sx,Tx))
  double gamma_term = 0.0;  ///< γ(d(Tx,Ty)) Ψ(d(Sy,Ty))

  [[nodiscard]] double rhs() const noexcept { return alpha_term + beta_term + gamma_term; }
  [[nodiscard]] double slack() const noexcept { return rhs() - lhs; }

  friend bool operator==(const InequalityTerms&, const InequalityTerms&) = default;
};

/// Evaluates both sides at (x, y). Throws NonFiniteError naming the term.
InequalityTerms lhs_rhs(const ContractionPair& pair, double x, double y,
                        ContractionForm form = ContractionForm::plain,
                        double quadrature_tol = 1e-10);

/// The ordered (x, y) pairs a certificate checks: a product grid (both
/// orders and the diagonal), near-diagonal pairs with |x-y| in {1e-3, 1e-6}
/// in both orientations, then seeded uniform pairs. Exactly n_pairs long.
std::vector<std::pair<double, double>> sample_pairs(const Domain& domain, std::size_t n_pairs,
                                                    std::uint64_t seed);

enum class CertificateVerdict { certified, violated };

struct ContractionCertificate {
  ContractionForm form = ContractionForm::plain;
  std::size_t pairs_checked = 0;
  double max_violation = 0.0;  ///< max of lhs - rhs; positive means the inequality failed
  double min_slack = 0.0;      ///< min of rhs - lhs
  std::pair<double, double> worst_pair{0.0, 0.0};
  InequalityTerms worst_terms;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  std::optional<double> quadrature_tol;
  CertificateVerdict verdict = CertificateVerdict::certified;
  /// Per-pair slacks in sample_pairs order; filled only on request.
  std::vector<double> slacks;

  friend bool operator==(const ContractionCertificate&, const ContractionCertificate&) = default;
};

struct CertifyOptions {
  std::size_t n_pairs = 10000;
  std::uint64_t seed = 42;
  double tolerance = 1e-12;
  double quadrature_tol = 1e-10;
  bool keep_slacks = false;
};

/// Sampled evidence for the plain inequality.
ContractionCertificate certify(const ContractionPair& pair, const CertifyOptions& options = {});

/// Sampled evidence for the integral-type inequality. Requires integral_phi.
ContractionCertificate certify_integral(const ContractionPair& pair,
                                        const CertifyOptions& options = {});

const char* to_string(CertificateVerdict v) noexcept;
const char* to_string(ContractionForm f) noexcept;
const char* to_string(MiddleTerm m) noexcept;

}  // namespace jfp
