#include <gtest/gtest.h>

#include <random>

#include "mbsym/poisson.hpp"
#include "random_poly.hpp"

using namespace mbsym;
using namespace mbsym::poisson;

namespace {

const PoissonTensor& pi() {
  static const PoissonTensor p = standard_poisson_tensor();
  return p;
}
Poly P(std::string_view s) { return Poly::parse(model::state5_vars(), s); }
bool all_zero(const std::vector<Poly>& v) {
  for (const auto& p : v) {
    if (!p.is_zero()) return false;
  }
  return true;
}

}  // namespace

TEST(Bracket, SpecExamples) {
  EXPECT_EQ(poisson_bracket(P("x1"), P("y1"), pi()), P("1"));
  EXPECT_EQ(poisson_bracket(P("y1"), P("z"), pi()), P("x1"));
  EXPECT_EQ(poisson_bracket(P("x2"), P("y2"), pi()), P("1"));
  EXPECT_EQ(poisson_bracket(P("y2"), P("z"), pi()), P("x2"));
  EXPECT_TRUE(poisson_bracket(P("x1"), P("x2"), pi()).is_zero());
  EXPECT_THROW(poisson_bracket(Poly::parse(VarSet{"a"}, "a"), P("x1"), pi()), VarSetMismatch);
}

TEST(Jacobi, SpecExamples) {
  EXPECT_TRUE(jacobi_residual(0, 1, 4, pi()).is_zero());
  EXPECT_TRUE(jacobi_residual(1, 3, 4, pi()).is_zero());
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i + 1; j < 5; ++j) {
      for (std::size_t k = j + 1; k < 5; ++k) EXPECT_TRUE(jacobi_residual(i, j, k, pi()).is_zero());
    }
  }
  EXPECT_THROW(jacobi_residual(0, 1, 5, pi()), DomainError);
  EXPECT_THROW(jacobi_residual(2, 1, 4, pi()), DomainError);
}

TEST(Jacobi, BrokenTensorIsDetected) {
  // A linear entry that is not a structure constant of any Lie algebra compatible with the rest.
  PoissonTensor bad = pi();
  bad(0, 2) = P("y1");
  bad(2, 0) = P("-y1");
  bool nonzero = false;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i + 1; j < 5; ++j) {
      for (std::size_t k = j + 1; k < 5; ++k) nonzero = nonzero || !jacobi_residual(i, j, k, bad).is_zero();
    }
  }
  EXPECT_TRUE(nonzero);
}

TEST(Casimir, SpecExamples) {
  const auto r = casimir_residual(pi());
  EXPECT_TRUE(r[1].is_zero());
  EXPECT_TRUE(all_zero(r));
  EXPECT_FALSE(all_zero(ham_vector_field(pi(), model::invariant_symbolic(model::InvariantId::H))));
}

TEST(HamField, SpecExamples) {
  EXPECT_EQ(ham_vector_field(pi(), model::invariant_symbolic(model::InvariantId::H)),
            model::rhs_symbolic(model::SystemId::MB5));
  EXPECT_TRUE(all_zero(ham_vector_field(pi(), model::invariant_symbolic(model::InvariantId::C))));
  // Direct expansion of pi * grad J with grad J = (y2, -x2, -y1, x1, 0).
  EXPECT_EQ(ham_vector_field(pi(), model::invariant_symbolic(model::InvariantId::J)),
            (std::vector<Poly>{P("-x2"), P("-y2"), P("x1"), P("y1"), P("0")}));
}

TEST(Involution, ConstantsCommute) {
  using model::InvariantId;
  const auto H = model::invariant_symbolic(InvariantId::H), C = model::invariant_symbolic(InvariantId::C),
             J = model::invariant_symbolic(InvariantId::J);
  EXPECT_TRUE(poisson_bracket(H, C, pi()).is_zero());
  EXPECT_TRUE(poisson_bracket(H, J, pi()).is_zero());
  EXPECT_TRUE(poisson_bracket(C, J, pi()).is_zero());
}

TEST(Antisymmetry, HoldsAndCatchesCorruption) {
  EXPECT_TRUE(all_zero(antisymmetry_residual(pi())));
  PoissonTensor bad = pi();
  bad(1, 4) = -bad(1, 4);
  EXPECT_FALSE(all_zero(antisymmetry_residual(bad)));
}

TEST(CommutatorTable, SpecExamples) {
  const auto e = matrix_commutator_table(e_basis());
  EXPECT_EQ(e.bracket(1, 4), (RationalVector{Rational(1), 0, 0, 0, 0}));
  EXPECT_EQ(e.bracket(3, 4), (RationalVector{0, 0, Rational(1), 0, 0}));
  EXPECT_EQ(e.bracket(0, 2), (RationalVector(5, Rational(0))));
  const auto a = matrix_commutator_table(a_basis());
  EXPECT_EQ(a.bracket(0, 1), (RationalVector{0, Rational(1), 0, 0}));
  EXPECT_EQ(a.bracket(0, 2), (RationalVector{0, 0, Rational(-1), 0}));
  EXPECT_EQ(a.bracket(2, 3), (RationalVector(4, Rational(0))));
}

TEST(CommutatorTable, OnlyTheStatedPairsAreNonzero) {
  const auto e = matrix_commutator_table(e_basis());
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i + 1; j < 5; ++j) {
      const bool stated = (i == 1 && j == 4) || (i == 3 && j == 4);
      EXPECT_EQ(e.bracket(i, j) != RationalVector(5, Rational(0)), stated) << i << "," << j;
    }
  }
}

TEST(CommutatorTable, NotInSpanCarriesWitness) {
  // E2 and E5 alone do not close: their bracket is E1.
  const auto e = e_basis();
  try {
    (void)matrix_commutator_table({e[1], e[4]});
    FAIL() << "expected NotInSpan";
  } catch (const NotInSpan& ex) {
    EXPECT_EQ(ex.witness(), commutator(e[1], e[4]));
  }
  EXPECT_THROW(matrix_commutator_table({e[0], e[0]}), DomainError);
}

TEST(Assembly, SpecExamples) {
  const auto theta = paper_cocycle();
  const auto a =
      assemble_modified_lie_poisson(StructureConstants::from(matrix_commutator_table(e_basis()), theta), theta);
  EXPECT_EQ(a(1, 4), P("x1"));
  EXPECT_EQ(a(0, 1), P("1"));
  EXPECT_TRUE(a(0, 2).is_zero());
  EXPECT_EQ(a, displayed_poisson_tensor());
}

TEST(StructureConstantsTest, ValidateRejectsNonAntisymmetric) {
  Cocycle bad = paper_cocycle();
  bad.theta(0, 1) = Rational(2);
  EXPECT_THROW(StructureConstants::from(matrix_commutator_table(e_basis()), bad), DomainError);
}

TEST(Iso, PhiIsAnIsomorphism) {
  const auto r = iso_check_Phi();
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.residuals.size(), 16u);
  const std::array<Rational, 5> a{0, 1, 0, 0, 0}, b{0, 0, 0, 0, 1};
  const auto lhs = iso_Phi(cross(a, b, Rational(0)), Rational(0));
  EXPECT_EQ(lhs, commutator(iso_Phi(a, Rational(0)), iso_Phi(b, Rational(0))));
  EXPECT_EQ(lhs, e_basis()[0]);
  EXPECT_EQ(cross(a, a, Rational(0)), (std::array<Rational, 5>{}));
}

TEST(Cocycle, PaperCocycleIsNotACoboundary) {
  const auto r = cocycle_check(paper_cocycle());
  EXPECT_TRUE(r.passed) << (r.witnesses.empty() ? "" : r.witnesses.back());
  EXPECT_EQ(paper_cocycle()(0, 1), Rational(1));
  EXPECT_EQ(commutator(e_basis()[0], e_basis()[1]), RationalMatrix(4, 4, Rational(0)));
}

TEST(Cocycle, BrokenIdentityIsDetected) {
  Cocycle bad = paper_cocycle();
  bad.theta(0, 2) = Rational(1);
  bad.theta(2, 0) = Rational(-1);
  EXPECT_FALSE(cocycle_check(bad).passed);
}

class BracketProperties : public ::testing::TestWithParam<unsigned> {};

TEST_P(BracketProperties, AntisymmetricLeibnizAndCasimir) {
  std::mt19937 rng(GetParam());
  const auto& vs = model::state5_vars();
  const Poly f = fixtures::random_poly(rng, vs, 3, 2), g = fixtures::random_poly(rng, vs, 3, 2),
             h = fixtures::random_poly(rng, vs, 3, 1);
  EXPECT_EQ(poisson_bracket(f, g, pi()), -poisson_bracket(g, f, pi()));
  EXPECT_EQ(poisson_bracket(f, g * h, pi()), poisson_bracket(f, g, pi()) * h + g * poisson_bracket(f, h, pi()));
  EXPECT_TRUE(poisson_bracket(f, model::invariant_symbolic(model::InvariantId::C), pi()).is_zero());
}

TEST_P(BracketProperties, JacobiOnRandomFunctions) {
  std::mt19937 rng(GetParam() + 500);
  const auto& vs = model::state5_vars();
  const Poly f = fixtures::random_poly(rng, vs, 2, 1), g = fixtures::random_poly(rng, vs, 2, 1),
             h = fixtures::random_poly(rng, vs, 2, 1);
  auto br = [](const Poly& a, const Poly& b) { return poisson_bracket(a, b, pi()); };
  EXPECT_TRUE((br(br(f, g), h) + br(br(g, h), f) + br(br(h, f), g)).is_zero());
}

INSTANTIATE_TEST_SUITE_P(Seeds, BracketProperties, ::testing::Range(0u, 15u));
