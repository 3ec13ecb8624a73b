#pragma once

#include <optional>
#include <string>

#include "awlift/expr.hpp"
#include "awlift/jet.hpp"
#include "awlift/types.hpp"

namespace awlift {

/// Order-3 jets of the Weierstrass data at one point.
struct WeierstrassJets {
  HoloJet h;
  HoloJet g;
  HoloJet q;
};

/// Anything that can produce Weierstrass jets pointwise: a parsed MapSpec or
/// a disk-automorphism precomposition of one.
class JetMap {
 public:
  virtual ~JetMap() = default;
  virtual WeierstrassJets jets(Cplx z) const = 0;
  virtual bool analytic() const = 0;  // g ≡ 0 and q ≡ 0
};

/// Weierstrass data (h, g, q) as parsed analytic expressions.
///
/// At least one of g, q is present, or both are absent (analytic case).
/// When q is missing it is reconstructed pointwise as the principal square
/// root of g'/h'; this is only meaningful when that root is globally
/// single-valued on the disk.  When g is missing its value is recovered by
/// integrating q^2 h' from the origin (g(0) = 0).
class MapSpec : public JetMap {
 public:
  MapSpec(ExprPtr h, ExprPtr g, ExprPtr q, std::string label);

  static MapSpec from_json_text(const std::string& text);
  static MapSpec from_file(const std::string& path);
  /// Accepts a file path or inline JSON (leading '{').
  static MapSpec load(const std::string& path_or_inline);

  WeierstrassJets jets(Cplx z) const override;
  bool analytic() const override { return !g_ && !q_; }

  bool has_g() const { return static_cast<bool>(g_); }
  bool has_q() const { return static_cast<bool>(q_); }
  const std::string& label() const { return label_; }
  const ExprPtr& h_expr() const { return h_; }
  const ExprPtr& g_expr() const { return g_; }
  const ExprPtr& q_expr() const { return q_; }

 private:
  void check_consistency() const;
  HoloJet g_jet_at(Cplx z, const HoloJet& hj, const HoloJet& qj) const;

  ExprPtr h_;
  ExprPtr g_;
  ExprPtr q_;
  std::string label_;
};

}  // namespace awlift
