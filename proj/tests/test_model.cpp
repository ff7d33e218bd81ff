#include <gtest/gtest.h>

#include <random>

#include "mbsym/model.hpp"
#include "random_poly.hpp"

using namespace mbsym;
using namespace mbsym::model;

namespace {

std::vector<double> vec(std::initializer_list<double> v) { return v; }

std::map<std::string, Rational> random_point(std::mt19937& rng, const VarSet& vs) {
  std::map<std::string, Rational> pt;
  for (const auto& n : vs.names()) pt[n] = fixtures::random_rational(rng);
  return pt;
}

}  // namespace

TEST(Rhs, SpecExamples) {
  EXPECT_EQ(rhs(SystemId::MB5, vec({1, 2, 3, 4, 5})), vec({2, 5, 4, 15, -14}));
  EXPECT_EQ(rhs(SystemId::MB5, vec({0, 0, 0, 0, 2.5})), vec({0, 0, 0, 0, 0}));
  EXPECT_EQ(rhs(SystemId::HAM6, vec({1, 0, 0, 0, 0, 1})), vec({0, 0, 0.5, 0.5, 0, 0}));
  EXPECT_EQ(rhs(SystemId::EL6, vec({1, 2, 0, 3, 4, 5})), vec({3, 4, 5, 5, 10, -11}));
  EXPECT_THROW(rhs(SystemId::MB5, vec({1, 2, 3})), DomainError);
}

TEST(Rhs, TypedOverloads) {
  const State5 s = rhs(State5{1, 2, 3, 4, 5});
  EXPECT_EQ(s.to_array(), (std::array<double, 5>{2, 5, 4, 15, -14}));
}

TEST(RhsSymbolic, SpecExamples) {
  EXPECT_EQ(rhs_symbolic(SystemId::MB5)[4], Poly::parse(state5_vars(), "-x1*y1 - x2*y2"));
  EXPECT_TRUE(rhs_symbolic(SystemId::HAM6)[5].is_zero());
  EXPECT_EQ(rhs_symbolic(SystemId::EL6)[3], Poly::parse(tangent6_vars(), "q1*qd3"));
}

TEST(RhsSymbolic, FloatRenditionAgreesWithPolys) {
  std::mt19937 rng(7);
  for (auto sys : {SystemId::MB5, SystemId::HAM6, SystemId::EL6}) {
    const auto polys = rhs_symbolic(sys);
    for (int k = 0; k < 20; ++k) {
      const auto pt = random_point(rng, vars_of(sys));
      std::vector<double> x;
      for (const auto& n : vars_of(sys).names()) x.push_back(pt.at(n).to_double());
      const auto f = rhs(sys, x);
      for (std::size_t i = 0; i < polys.size(); ++i) EXPECT_NEAR(f[i], eval(polys[i], pt).to_double(), 1e-12);
    }
  }
}

TEST(Invariant, SpecExamples) {
  EXPECT_EQ(invariant(InvariantId::H, State5{0, 1, 0, 0, 0}), 0.5);
  EXPECT_EQ(invariant(InvariantId::C, State5{1, 0, 1, 0, 0}), 1.0);
  EXPECT_EQ(invariant(InvariantId::J, State5{1, 0, 1, 0, 0}), 0.0);
  EXPECT_EQ(invariant(InvariantId::Ctilde, State6{1, 2, 3, 4, 5, 6}), 6.0);
  EXPECT_EQ(invariant(InvariantId::Jtilde, State6{1, 2, 3, 4, 5, 6}), 1.0 * 5 - 2.0 * 4);
}

TEST(Invariant, DomainMismatchThrows) {
  EXPECT_THROW(invariant(InvariantId::H, SystemId::HAM6, vec({1, 2, 3, 4, 5, 6})), DomainError);
  EXPECT_THROW(invariant(InvariantId::L, SystemId::MB5, vec({1, 2, 3, 4, 5})), DomainError);
  EXPECT_EQ(domain_of(InvariantId::L), SystemId::EL6);
}

TEST(Phi, SpecExamples) {
  EXPECT_EQ(phi(State6{1, 2, 3, 4, 5, 6}).to_array(), (std::array<double, 5>{1, 4, 2, 5, 3.5}));
  EXPECT_EQ(phi(State6{0, 0, 0, 0, 0, 2.25}).to_array(), (std::array<double, 5>{0, 0, 0, 0, 2.25}));
}

TEST(Phi, InvariantsPullBackAtRandomRationalPoints) {
  std::mt19937 rng(11);
  const auto map = phi_symbolic();
  const auto H = invariant_symbolic(InvariantId::H), C = invariant_symbolic(InvariantId::C),
             J = invariant_symbolic(InvariantId::J);
  for (int k = 0; k < 100; ++k) {
    const auto pt = random_point(rng, state6_vars());
    const auto image = apply_map(map, pt);
    EXPECT_EQ(eval(H, image), eval(invariant_symbolic(InvariantId::Htilde), pt));
    EXPECT_EQ(eval(C, image), pt.at("p3"));
    EXPECT_EQ(eval(J, image), eval(invariant_symbolic(InvariantId::Jtilde), pt));
  }
}

TEST(Phi, JacobianRank) {
  EXPECT_EQ(jacobian_rank_phi(State6{0, 0, 0, 0, 0, 0}), 5u);
  EXPECT_EQ(jacobian_rank_phi(State6{1, 2, 3, 0, 0, 0}), 5u);
  EXPECT_EQ(jacobian_rank_phi(State6{-4.5, 0.25, 1, 7, -2, 3}), 5u);
}

TEST(Legendre, SpecExamples) {
  EXPECT_EQ(legendre(TangentState6{1, 1, 0, 0, 0, 1}).to_array(), (std::array<double, 6>{1, 1, 0, 0, 0, 2}));
  const TangentState6 ts{0.5, -1.25, 2, 0.75, 3, -0.5};
  EXPECT_EQ(legendre_inv(legendre(ts)).to_array(), ts.to_array());
}

TEST(Legendre, ExactInversePairAtRandomRationalPoints) {
  std::mt19937 rng(13);
  const auto fl = legendre_symbolic(), inv = legendre_inverse_symbolic();
  for (int k = 0; k < 50; ++k) {
    const auto ts = random_point(rng, tangent6_vars());
    auto back = apply_map(inv, apply_map(fl, ts));
    for (const auto& n : {"q1", "q2", "q3"}) back.emplace(n, apply_map(fl, ts).at(n));
    for (const auto& [n, v] : ts) EXPECT_EQ(back.at(n), v) << n;
  }
}

TEST(Legendre, EnergyRelation) {
  const auto& t = tangent6_vars();
  const auto fl = legendre_symbolic();
  Poly sum(t);
  for (int i = 1; i <= 3; ++i) sum += fl.at("p" + std::to_string(i)) * Poly::variable(t, "qd" + std::to_string(i));
  EXPECT_TRUE((compose(invariant_symbolic(InvariantId::Htilde), fl, t) - (sum - invariant_symbolic(InvariantId::L)))
                  .is_zero());
}

TEST(Properties, ConstantsOfMotion) {
  for (auto id : {InvariantId::H, InvariantId::C, InvariantId::J}) {
    EXPECT_TRUE(lie_derivative(invariant_symbolic(id), rhs_symbolic(SystemId::MB5)).is_zero()) << to_string(id);
  }
  for (auto id : {InvariantId::Htilde, InvariantId::Ctilde, InvariantId::Jtilde}) {
    EXPECT_TRUE(lie_derivative(invariant_symbolic(id), rhs_symbolic(SystemId::HAM6)).is_zero()) << to_string(id);
  }
  EXPECT_FALSE(lie_derivative(Poly::parse(state5_vars(), "x1"), rhs_symbolic(SystemId::MB5)).is_zero());
}

TEST(Properties, PhiIntertwinesFlows) {
  const auto jac = phi_jacobian_symbolic();
  const auto g = rhs_symbolic(SystemId::HAM6), f = rhs_symbolic(SystemId::MB5);
  const auto map = phi_symbolic();
  for (std::size_t i = 0; i < 5; ++i) {
    Poly lhs(state6_vars());
    for (std::size_t j = 0; j < 6; ++j) lhs += jac(i, j) * g[j];
    EXPECT_EQ(lhs, compose(f[i], map, state6_vars())) << i;
  }
}

TEST(Properties, El6IsFirstOrderForm) {
  const auto& so = second_order_vars();
  const auto el6 = rhs_symbolic(SystemId::EL6);
  Bindings acc;
  for (int i = 1; i <= 3; ++i) acc.emplace("qdd" + std::to_string(i), rebase(el6[2 + i], so));
  for (const auto& r : euler_lagrange_residuals()) EXPECT_TRUE(substitute(r, acc).is_zero()) << r;
}
