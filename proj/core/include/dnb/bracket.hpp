#ifndef DNB_BRACKET_HPP
#define DNB_BRACKET_HPP

#include <dnb/geometry.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dnb {

//! First failing index tuple of a relation, 1-based, in scan order.
struct violation {
  std::vector<std::pair<std::string, int>> indices;
  expr residual;
};

struct relation_verdict {
  std::string relation;
  bool pass = true;
  std::optional<violation> witness;
};

//! Per-relation verdicts, assembled by scanning index tuples in ascending
//! lexicographic order and stopping each relation at its first violation.
struct relation_report {
  std::vector<relation_verdict> verdicts;
  bool overall = true;

  const relation_verdict* find(const std::string& name) const {
    for (const auto& v : verdicts)
      if (v.relation == name) return &v;
    return nullptr;
  }
};

//! Multidimensional bracket of hydrodynamic type on N fields over n spatial
//! directions: one symmetric contravariant metric g^{ij,alpha} and one
//! coefficient tensor b^{ij,alpha}_k per direction alpha.
class hydro_bracket {
public:
  hydro_bracket() = default;
  //! Takes full data; shapes are validated, entries are not (use verify).
  hydro_bracket(varset vars, std::vector<tensor_field> g, std::vector<tensor_field> b);
  //! Derives every b^{ij,alpha}_k from the corresponding metric's
  //! Levi-Civita connection. Throws degenerate_metric when impossible.
  static hydro_bracket from_metrics(const varset& vars, std::vector<tensor_field> g);

  int components() const { return g_.empty() ? 0 : g_[0].extent(0); }
  int dimension() const { return static_cast<int>(g_.size()); }
  const varset& vars() const { return vars_; }
  //! alpha is 0-based here; reports print 1-based labels.
  const tensor_field& g(int alpha) const { return g_[static_cast<std::size_t>(alpha)]; }
  const tensor_field& b(int alpha) const { return b_[static_cast<std::size_t>(alpha)]; }

private:
  varset vars_;
  std::vector<tensor_field> g_;
  std::vector<tensor_field> b_;
};

//! Checks the seven closedness relations a1..a7 that characterize a Poisson
//! bracket of this form. Works for degenerate metrics too.
relation_report verify_poisson(const hydro_bracket& B);

//! Connections carried by the bracket coefficients, plus the Levi-Civita
//! data of each metric. For a Poisson bracket the two coincide.
struct bracket_geometry {
  std::vector<metric_data> metrics;
  //! Gamma^{k,alpha}_{ij} = -g^alpha_{is} b^{sk,alpha}_j, slots (k, i, j).
  std::vector<tensor_field> connections;
  //! True when every derived connection equals the Levi-Civita one.
  bool levi_civita_consistent = true;
};

//! Throws degenerate_metric (with its 1-based alpha) when a metric cannot be
//! inverted.
bracket_geometry derive_geometry(const hydro_bracket& B);

//! Obstruction tensors for every ordered pair alpha != beta (keys 1-based):
//! mixed T^{i,ab}_{jk} = Gamma^{i,b}_{jk} - Gamma^{i,a}_{jk} built from the
//! bracket connections, and raised T^{ijk,ab} = g^{ks,b} g^{ir,a} T^{j,ab}_{rs}.
//! The bracket is reducible to constant coefficients precisely when every
//! mixed entry vanishes.
struct obstruction_set {
  std::map<std::pair<int, int>, tensor_field> mixed;
  std::map<std::pair<int, int>, tensor_field> raised;
};

obstruction_set obstructions(const hydro_bracket& B);

//! The four pair relations b1..b4 on the raised/mixed obstruction tensors of
//! all ordered metric pairs, built from Levi-Civita connections. Pre: every
//! metric nondegenerate and flat (throws non_flat_metric naming the first
//! offender otherwise).
relation_report verify_flat_pencil_relations(const hydro_bracket& B);

//! Self-consistency: the direct relation check must agree with the
//! metric-pair characterization (all metrics flat, coefficients derived from
//! the metrics, pair relations pass). Returns the agreement verdict; false
//! signals an engine defect, not a property of the input.
bool theorem2_crosscheck(const hydro_bracket& B);

} // namespace dnb

#endif
