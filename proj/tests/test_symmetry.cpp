#include <gtest/gtest.h>

#include "mbsym/symmetry.hpp"

using namespace mbsym;
using namespace mbsym::symmetry;

namespace {

Poly J(std::string_view s) { return Poly::parse(jet_vars(), s); }
JetVectorField U(std::string_view xi, std::string_view e1, std::string_view e2, std::string_view e3) {
  return JetVectorField::parse(xi, e1, e2, e3);
}
bool all_zero(const std::vector<Poly>& v) {
  for (const auto& p : v) {
    if (!p.is_zero()) return false;
  }
  return true;
}
const std::array<JetVectorField, 4>& basis() {
  static const auto b = paper_basis();
  return b;
}

}  // namespace

TEST(Family, BasisElements) {
  EXPECT_EQ(basis()[0].field(), U("-t", "q1", "q2", "q3").field());
  EXPECT_EQ(basis()[1].field(), U("1", "0", "0", "0").field());
  EXPECT_EQ(basis()[2].field(), U("0", "0", "0", "1").field());
  EXPECT_EQ(basis()[3].field(), U("0", "q2", "-q1", "0").field());
}

TEST(JetField, RejectsVelocityDependence) {
  EXPECT_THROW(U("qd1", "0", "0", "0"), DomainError);
}

TEST(Prolong, SpecExamples) {
  const auto p3 = prolong(U("0", "0", "0", "1"), 2);
  for (const auto& c : p3.vel_coeffs) EXPECT_TRUE(c.is_zero());
  for (const auto& c : p3.acc_coeffs) EXPECT_TRUE(c.is_zero());

  const auto p1 = prolong(basis()[0], 1);
  EXPECT_EQ(p1.vel_coeffs[0], J("2*qd1"));
  EXPECT_EQ(p1.vel_coeffs[1], J("2*qd2"));
  EXPECT_EQ(p1.vel_coeffs[2], J("2*qd3"));
  EXPECT_TRUE(p1.acc_coeffs.empty());

  const auto p4 = prolong(U("0", "q2", "-q1", "0"), 1);
  EXPECT_EQ(p4.vel_coeffs[0], J("qd2"));
  EXPECT_EQ(p4.vel_coeffs[1], J("-qd1"));
  EXPECT_TRUE(p4.vel_coeffs[2].is_zero());

  EXPECT_THROW(prolong(basis()[0], 3), DomainError);
}

TEST(Prolong, SecondOrderOfScaling) {
  const auto p = prolong(basis()[0], 2);
  EXPECT_EQ(p.acc_coeffs[0], J("3*qdd1"));
}

TEST(TotalDerivative, RefusesThirdOrder) {
  EXPECT_EQ(total_derivative(J("t*q1 + qd2")), J("q1 + t*qd1 + qdd2"));
  EXPECT_THROW(total_derivative(J("qdd1")), DomainError);
}

TEST(Determining, SpecExamples) {
  EXPECT_TRUE(all_zero(determining_residuals(family_member(paper_family(), {1, 0, 0, 0}))));
  const auto r = determining_residuals(U("0", "q1", "0", "0"));
  EXPECT_EQ(r[2], J("2*q1*qd1"));
  EXPECT_TRUE(all_zero(determining_residuals(U("1", "0", "0", "0"))));
}

TEST(Determining, SymbolicFamily) {
  EXPECT_TRUE(all_zero(determining_residuals(family_field(paper_family()))));
}

TEST(Determining, MatchesDisplayedRelations) {
  // Regression of the generator against the three relations written out by hand:
  //   eta1'' - xi'' qd1 - 2 qdd1 xi' - eta1 qd3 - q1 (eta3' - xi' qd3)
  //   eta2'' - xi'' qd2 - 2 qdd2 xi' - eta2 qd3 - q2 (eta3' - xi' qd3)
  //   eta3'' - xi'' qd3 - 2 qdd3 xi' + eta1 qd1 + eta2 qd2 + q1 (eta1' - xi' qd1) + q2 (eta2' - xi' qd2)
  // with qdd eliminated. Checked on a generic quadratic field.
  const auto u = U("t^2 + q1*q3 - 2*t", "t*q2 + q3^2", "q1^2 - 3*t*q3 + 1", "q1*q2 + t");
  const auto D = [](const Poly& f) { return total_derivative(f); };
  const Poly dxi = D(u.xi), ddxi = D(dxi);
  std::array<Poly, 3> de, dde;
  for (std::size_t i = 0; i < 3; ++i) {
    de[i] = D(u.eta[i]);
    dde[i] = D(de[i]);
  }
  const Poly qd1 = J("qd1"), qd2 = J("qd2"), qd3 = J("qd3"), q1 = J("q1"), q2 = J("q2");
  const std::vector<Poly> hand{
      dde[0] - ddxi * qd1 - Rational(2) * J("qdd1") * dxi - u.eta[0] * qd3 - q1 * (de[2] - dxi * qd3),
      dde[1] - ddxi * qd2 - Rational(2) * J("qdd2") * dxi - u.eta[1] * qd3 - q2 * (de[2] - dxi * qd3),
      dde[2] - ddxi * qd3 - Rational(2) * J("qdd3") * dxi + u.eta[0] * qd1 + u.eta[1] * qd2 + q1 * (de[0] - dxi * qd1) +
          q2 * (de[1] - dxi * qd2)};
  const auto generated = determining_residuals(u);
  const auto subs = acceleration_bindings();
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(generated[i], substitute(hand[i], subs)) << i;
}

TEST(Solve, DimensionFourAtDegreesOneToThree) {
  const std::vector<JetVectorField> expected(basis().begin(), basis().end());
  for (std::uint32_t d : {1u, 2u, 3u}) {
    const auto sol = solve_determining(d);
    EXPECT_EQ(sol.basis.size(), 4u) << d;
    EXPECT_TRUE(same_span(sol.basis, expected, d)) << d;
    for (const auto& b : sol.basis) EXPECT_TRUE(all_zero(determining_residuals(b)));
  }
  EXPECT_THROW(solve_determining(0), DomainError);
}

TEST(Solve, Deterministic) {
  const auto a = solve_determining(2), b = solve_determining(2);
  ASSERT_EQ(a.basis.size(), b.basis.size());
  for (std::size_t i = 0; i < a.basis.size(); ++i) EXPECT_EQ(a.basis[i].field(), b.basis[i].field());
  EXPECT_EQ(a.unknowns, 60u);
}

TEST(Coefficients, RoundTrip) {
  const auto u = U("t^2 - q1", "3/2*q2*q3", "0", "t + 1");
  EXPECT_EQ(field_from_coefficients(coefficient_vector(u, 2), 2).field(), u.field());
}

TEST(LieBracket, SpecExamples) {
  EXPECT_EQ(lie_bracket(basis()[0], basis()[1]).field(), basis()[1].field());
  EXPECT_EQ(lie_bracket(basis()[0], basis()[2]).field(), (Poly::constant(jet_vars(), -1) * basis()[2].field()));
  EXPECT_TRUE(lie_bracket(basis()[2], basis()[3]).field().is_zero());
}

TEST(LieBracket, AlgebraTableAndJacobi) {
  const std::vector<JetVectorField> b(basis().begin(), basis().end());
  const auto t = algebra_table(b, 1);
  EXPECT_EQ(t.bracket(0, 1), (RationalVector{0, Rational(1), 0, 0}));
  EXPECT_EQ(t.bracket(0, 2), (RationalVector{0, 0, Rational(-1), 0}));
  const auto a = poisson::matrix_commutator_table(poisson::a_basis());
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(t.bracket(i, j), a.bracket(i, j));
  }
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      for (std::size_t k = 0; k < 4; ++k) {
        const auto x = b[i].field(), y = b[j].field(), z = b[k].field();
        EXPECT_TRUE((lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) +
                     lie_bracket(z, lie_bracket(x, y)))
                        .is_zero());
      }
    }
  }
}

TEST(LieBracket, AlgebraTableRejectsNonClosedSpan) {
  EXPECT_THROW(algebra_table({U("0", "1", "0", "0"), U("0", "q1^2", "0", "0")}, 2), poisson::NotInSpan);
}

TEST(Variational, SpecExamples) {
  const Poly L = rebase(model::invariant_symbolic(model::InvariantId::L), jet_vars());
  EXPECT_TRUE(variational_residual(family_member(paper_family(), {0, 2, -3, 5})).is_zero());
  EXPECT_EQ(variational_residual(family_field(paper_family())), Rational(3) * J("alpha") * L);
  EXPECT_TRUE(variational_residual(basis()[3]).is_zero());
}

TEST(Noether, SpecExamples) {
  using model::InvariantId;
  const auto& s6 = model::state6_vars();
  auto inv = [](InvariantId id) { return model::invariant_symbolic(id); };
  const auto e = noether_charge({0, 1, 0, 0});
  EXPECT_EQ(e.charge, -inv(InvariantId::Htilde));
  EXPECT_TRUE(e.time_derivative.is_zero());
  const auto m = noether_charge({0, 0, 0, 1});
  EXPECT_EQ(m.charge, Poly::variable(s6, "p3"));
  EXPECT_TRUE(m.time_derivative.is_zero());
  const auto a = noether_charge({0, 0, 1, 0});
  EXPECT_EQ(a.charge, Poly::parse(s6, "-(q1*p2 - q2*p1)"));
  EXPECT_TRUE(a.time_derivative.is_zero());
  EXPECT_THROW(noether_charge({1, 0, 0, 0}), DomainError);
  EXPECT_TRUE(noether_charge_symbolic().time_derivative.is_zero());
}

TEST(Noether, FormulaAgreesWithStatedCharge) {
  const auto& jv = jet_vars();
  Bindings fl;
  for (const auto& [name, poly] : model::legendre_symbolic()) {
    if (name[0] == 'p') fl.emplace(name, rebase(poly, jv));
  }
  const auto u = family_member(paper_family(), {0, 2, -1, 7});
  const auto charge = noether_charge({0, 2, -1, 7}).charge;
  EXPECT_EQ(noether_formula(u), compose(rebase(charge, phase_vars()), fl, jv));
}

TEST(FamilyCoordinates, RecognizesMembersOnly) {
  const auto c = family_coordinates(family_member(paper_family(), {2, -1, 3, 5}));
  ASSERT_TRUE(c);
  EXPECT_EQ((*c)[0], Poly::constant(jet_vars(), 2));
  EXPECT_EQ((*c)[3], Poly::constant(jet_vars(), 3));
  EXPECT_FALSE(family_coordinates(U("0", "q1", "0", "0")));
}

TEST(Pushforward, FlMatchesDisplayed) {
  EXPECT_EQ(pushforward_fl(family_field(paper_family())), displayed_v_tilde());
  EXPECT_THROW(pushforward_fl(U("0", "q1", "0", "0")), DomainError);
}

TEST(Pushforward, SpecExamples) {
  const auto x4 = ExtendedVectorField5::from(pushforward(basis()[3], PushTarget::PHI));
  EXPECT_EQ(x4.field(), ExtendedVectorField5::parse("0", {"x2", "y2", "-x1", "-y1", "0"}).field());
  EXPECT_TRUE(ExtendedVectorField5::from(pushforward(basis()[2], PushTarget::PHI)).is_zero());
  const auto x2 = ExtendedVectorField5::from(pushforward(basis()[1], PushTarget::PHI));
  EXPECT_EQ(x2.field(), ExtendedVectorField5::parse("1", {"0", "0", "0", "0", "0"}).field());
  EXPECT_EQ(pushforward_phi(pushforward_fl(family_field(paper_family()))).field(), displayed_X().field());
}

TEST(Pushforward, NonProjectableFieldIsRejected) {
  const auto& pv = phase_vars();
  VectorField v{pv, phase_coords(), {}};
  for (std::size_t i = 0; i < 7; ++i) v.components.push_back(Poly(pv));
  v.components[1] = Poly::variable(pv, "q3");
  EXPECT_THROW(pushforward_phi(v), DomainError);
}

TEST(FirstOrder, SpecExamples) {
  EXPECT_TRUE(all_zero(first_order_symmetry_residual(displayed_X())));
  EXPECT_FALSE(all_zero(first_order_symmetry_residual(ExtendedVectorField5::parse("0", {"x1", "0", "0", "0", "0"}))));
  EXPECT_TRUE(all_zero(first_order_symmetry_residual(dynamics_field())));
}

TEST(Commutator, SpecExamples) {
  const auto& ev = ext5_vars();
  const auto c1 = dynamics_commutator(substitute_parameters(displayed_X(), {1, 0, 0, 0}));
  ASSERT_TRUE(c1.factor);
  EXPECT_EQ(*c1.factor, Poly::constant(ev, 1));
  EXPECT_EQ(c1.commutator.field(), dynamics_field().field());
  EXPECT_TRUE(c1.master);
  EXPECT_TRUE(c1.conformal);
  const auto c0 = dynamics_commutator(substitute_parameters(displayed_X(), {0, 3, -2, 0}));
  EXPECT_TRUE(c0.commutes);
  EXPECT_FALSE(c0.master);
  const auto cs = dynamics_commutator(displayed_X());
  EXPECT_EQ(cs.commutator.field(), Poly::variable(ev, "alpha") * dynamics_field().field());
  EXPECT_TRUE(cs.second_commutator.is_zero());
}

TEST(Commutator, NonConformalField) {
  const auto c = dynamics_commutator(ExtendedVectorField5::parse("0", {"x1", "0", "0", "0", "0"}));
  EXPECT_FALSE(c.conformal);
  EXPECT_FALSE(c.commutes);
}

TEST(Mutation, EveryFamilyFlipBreaksSomething) {
  for (std::size_t k = 0; k < paper_family().size(); ++k) {
    const auto u = family_field(flip_family_term(paper_family(), k));
    const bool determining = !all_zero(determining_residuals(u));
    bool push = false;
    try {
      push = !(pushforward_fl(u) == displayed_v_tilde());
    } catch (const DomainError&) {
      push = true;
    }
    EXPECT_TRUE(determining || push) << "term " << k;
  }
}
