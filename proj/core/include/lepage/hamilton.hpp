#pragma once

#include <string>
#include <vector>

#include "lepage/legendre.hpp"

namespace lepage {

/// Candidate Hamilton extremal in Legendre coordinates: field expressions
/// y^s(x) and momentum expressions p^i_s(x) (flat order), both depending
/// only on the base variables and parameters.
struct SectionPair {
  std::vector<Expr> fields;   // size m
  std::vector<Expr> momenta;  // size mn, flat (s,i)
};

/// Name of the template symbol standing for the total derivative of the
/// momentum p^i_s along x^i.
std::string dp_symbol(int i, int sigma);

/// Residual templates of the Hamilton equations in Legendre coordinates.
/// The first family (one per field) reads
///   R_s = dH/dy^s + sum_i Dp^i_s
///         - 4 (dg^{ij}_{sv}/dx^j) y^v_i
///         - 2 (dg^{ij}_{kv}/dy^s + dg^{ij}_{sk}/dy^v + dg^{ij}_{vs}/dy^k) y^k_i y^v_j,
/// the second family R^i_s = dH/dp^i_s - y^s_i, where the jet names stand for
/// the section's x-derivatives and Dp for the momentum divergence terms.
/// When the 2-contact form is closed the g-derivative terms are structurally
/// absent (`reduced`).
struct P2System {
  LepageanSystem sys;
  Expr h_leg;
  std::vector<Expr> r_fields;   // m templates
  std::vector<Expr> r_momenta;  // mn templates, flat
  bool reduced = false;
};

/// Builds the residual templates; requires the closed-form Legendre
/// Hamiltonian (quadratic system, mn <= 8).
P2System p2_system(const LepageanSystem& sys);

/// Variant that forces the full first-family templates even when the
/// 2-contact form is closed (the g-derivative terms are then identically
/// zero as expressions but structurally present).
P2System p2_system_full(const LepageanSystem& sys);

/// Pushes a field section through the Legendre map: y = fields,
/// p^i_s = momenta with jets replaced by the section derivatives.
SectionPair prolong_section(const LepageanSystem& sys, const std::vector<Expr>& fields);

/// Substitutes the section into all m + mn residual templates; the result is
/// a family of expressions in x, identically zero iff the section satisfies
/// the Hamilton equations.
std::vector<Expr> residuals_on_section(const P2System& p2, const SectionPair& delta);

/// G^i_s = dH/dp^i_s restricted to the section minus d(field)/dx^i; vanishes
/// iff the section is the prolongation of its own field part.
std::vector<Expr> holonomy_gap(const P2System& p2, const SectionPair& delta);

}  // namespace lepage
