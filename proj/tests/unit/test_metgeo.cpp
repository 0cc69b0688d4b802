#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "nilgeo/construct.hpp"
#include "nilgeo/error.hpp"
#include "nilgeo/metric_geometry.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace nilgeo;
using nilgeo::testing::catalog_metric;
using nilgeo::testing::e;
using nilgeo::testing::RatGen;
using namespace nilgeo::testing;

namespace {

const std::vector<std::string>& splittable_ids() {
  static const std::vector<std::string> ids = {"h3_riemannian", "h3_lorentz_1", "h3_lorentz_2", "r_x_h3_lorentz",
                                               "heisenberg_2n1"};
  return ids;
}

MetricNilLieAlgebra random_h3_metric(RatGen& gen) {
  for (;;) {
    RatMatrix a = gen.mat(3, 3, 3, 2);
    const SymmetricForm g(a + a.transpose());
    if (!g.is_nondegenerate() || g.gram()(2, 2) == 0) continue;
    return MetricNilLieAlgebra(nilgeo::testing::h3(RatVector{1, 1, 1}).algebra(), g);
  }
}

std::vector<double> grid(double end, double step) {
  std::vector<double> g;
  for (int i = 0; i * step <= end + 1e-12; ++i) g.push_back(i * step);
  return g;
}

}  // namespace

TEST(Splitting, JMapsOfTheExamples) {
  {
    const auto m = catalog_metric("r_x_h3_lorentz");
    const CenterSplitting s = center_splitting(m);
    EXPECT_TRUE(s.j_ambient(e(4, 3)).is_zero());
    EXPECT_EQ(s.j_ambient(e(4, 4)), (RatMatrix{{0, -1}, {1, 0}}));
    EXPECT_FALSE(s.j_injective);
  }
  {
    const auto m = catalog_metric("h3_riemannian");
    EXPECT_EQ(center_splitting(m).j_ambient(e(3, 3)), (RatMatrix{{0, -1}, {1, 0}}));
  }
  {
    const auto m = catalog_metric("h3_lorentz_2");
    EXPECT_EQ(center_splitting(m).j_ambient(e(3, 3)), (RatMatrix{{0, 1}, {1, 0}}));
  }
}

TEST(Splitting, RejectsDegenerateAndHigherStep) {
  try {
    (void)center_splitting(catalog_metric("dim6_cotangent_h3"));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::DegenerateCenter);
  }
  try {
    (void)center_splitting(catalog_metric("free3step2gen"));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::NotTwoStep);
  }
}

TEST(Splitting, DefiningIdentityAndSkewness) {
  RatGen gen(31);
  std::vector<MetricNilLieAlgebra> cases;
  for (const auto& id : splittable_ids()) cases.push_back(catalog_metric(id));
  for (int i = 0; i < 10; ++i) cases.push_back(random_h3_metric(gen));
  for (const auto& m : cases) {
    const CenterSplitting s = center_splitting(m);
    EXPECT_TRUE((s.z_basis.transpose() * m.metric().gram() * s.v_basis).is_zero());
    for (std::size_t a = 0; a < s.dim_z(); ++a) {
      const RatMatrix& j = s.j_ops[a];
      EXPECT_TRUE((s.gram_v * j + j.transpose() * s.gram_v).is_zero());
      for (std::size_t u = 0; u < s.dim_v(); ++u)
        for (std::size_t w = 0; w < s.dim_v(); ++w) {
          const RatVector bu = s.v_basis.column(u), bw = s.v_basis.column(w);
          const Rat lhs = m.metric().pair(m.algebra().bracket(bu, bw), s.z_basis.column(a));
          const Rat rhs = m.metric().pair(s.v_basis * (j * unit_vector(s.dim_v(), u)), bw);
          EXPECT_EQ(lhs, rhs);
        }
    }
  }
}

TEST(StructureEndomorphisms, Reconstruction) {
  const auto h3 = catalog_metric("h3_riemannian");
  const auto j = structure_endomorphisms(h3, RatMatrix::from_columns(3, {e(3, 3)}));
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0], (RatMatrix{{0, -1, 0}, {1, 0, 0}, {0, 0, 0}}));

  const auto flat = abelian_metric(SymmetricForm::diagonal({1, -1, 1}));
  for (const auto& op : structure_endomorphisms(flat, RatMatrix::identity(3))) EXPECT_TRUE(op.is_zero());

  const auto dim6 = catalog_metric("dim6_cotangent_h3");
  const RatMatrix c = RatMatrix::from_columns(6, {e(6, 1), e(6, 2), e(6, 3)});
  const auto ops = structure_endomorphisms(dim6, c);
  ASSERT_EQ(ops.size(), 3u);
  for (std::size_t u = 0; u < 6; ++u)
    for (std::size_t w = 0; w < 6; ++w) {
      RatVector rebuilt = zero_vector(6);
      for (std::size_t i = 0; i < 3; ++i)
        rebuilt = add(rebuilt, scale(dim6.metric().pair(ops[i] * e(6, u + 1), e(6, w + 1)), c.column(i)));
      EXPECT_EQ(rebuilt, dim6.algebra().bracket_basis(u, w));
    }
  for (const auto& op : ops)
    for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(is_zero(op * c.column(i)));
}

TEST(Connection, MatchesKoszulOracle) {
  RatGen gen(32);
  std::vector<MetricNilLieAlgebra> cases;
  for (const auto& id : catalog_ids()) {
    const auto entry = example_catalog(id);
    if (std::holds_alternative<MetricNilLieAlgebra>(entry)) cases.push_back(std::get<MetricNilLieAlgebra>(entry));
  }
  for (int i = 0; i < 5; ++i) cases.push_back(random_h3_metric(gen));
  for (const auto& m : cases) {
    const LeviCivita lc(m);
    const std::size_t n = m.dim();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const RatVector x = unit_vector(n, a), y = unit_vector(n, b);
        const RatVector oracle = koszul(m, x, y);
        EXPECT_EQ(covariant_derivative(m, x, y), oracle);
        EXPECT_EQ(lc.nabla(x, y), oracle);
      }
    const RatVector x = gen.vec(n), y = gen.vec(n);
    EXPECT_EQ(lc.nabla(x, y), koszul(m, x, y));
  }
}

TEST(Connection, Examples) {
  const auto h3 = catalog_metric("h3_riemannian");
  EXPECT_EQ(covariant_derivative(h3, e(3, 1), e(3, 2)), (RatVector{0, 0, Rat(1, 2)}));
  for (const auto& id : splittable_ids()) {
    const auto m = catalog_metric(id);
    const CenterSplitting s = center_splitting(m);
    for (const RatVector& x : s.z_basis.columns())
      for (const RatVector& y : s.z_basis.columns()) EXPECT_TRUE(is_zero(covariant_derivative(m, x, y)));
  }
  const auto dim6 = catalog_metric("dim6_cotangent_h3");
  for (std::size_t a = 1; a <= 6; ++a)
    for (std::size_t b = 1; b <= 6; ++b)
      EXPECT_EQ(covariant_derivative(dim6, e(6, a), e(6, b)), scale(Rat(1, 2), dim6.algebra().bracket(e(6, a), e(6, b))));
}

TEST(Connection, MetricCompatibleAndTorsionFree) {
  RatGen gen(33);
  std::vector<MetricNilLieAlgebra> cases;
  for (const auto& id : {"h3_lorentz_1", "r_x_h3_lorentz", "heisenberg_2n1", "free3step2gen", "dim6_cotangent_h3"})
    cases.push_back(catalog_metric(id));
  for (int i = 0; i < 5; ++i) cases.push_back(random_h3_metric(gen));
  for (const auto& m : cases) {
    const LeviCivita lc(m);
    const std::size_t n = m.dim();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const RatVector x = unit_vector(n, a), y = unit_vector(n, b);
        EXPECT_EQ(sub(lc.nabla(x, y), lc.nabla(y, x)), m.algebra().bracket(x, y));
        for (std::size_t c = 0; c < n; ++c) {
          const RatVector z = unit_vector(n, c);
          EXPECT_EQ(m.metric().pair(lc.nabla(x, y), z) + m.metric().pair(y, lc.nabla(x, z)), Rat(0));
        }
      }
  }
}

TEST(Connection, CaseTableAgrees) {
  RatGen gen(34);
  for (const auto& id : splittable_ids()) {
    const auto m = catalog_metric(id);
    const CenterSplitting s = center_splitting(m);
    for (int trial = 0; trial < 20; ++trial) {
      const RatVector x = gen.vec(m.dim()), y = gen.vec(m.dim());
      EXPECT_EQ(covariant_derivative_by_cases(m, s, x, y), koszul(m, x, y));
    }
    for (const RatVector& xv : s.v_basis.columns())
      for (const RatVector& yz : s.z_basis.columns()) {
        EXPECT_EQ(koszul(m, xv, yz), scale(Rat(-1, 2), j_apply(s, yz, xv)));
        EXPECT_EQ(koszul(m, yz, xv), scale(Rat(-1, 2), j_apply(s, yz, xv)));
      }
  }
}

TEST(Curvature, Examples) {
  const auto h3 = catalog_metric("h3_riemannian");
  EXPECT_EQ(curvature(h3, e(3, 1), e(3, 2), e(3, 2)), (RatVector{Rat(-3, 4), 0, 0}));
  const auto flat = abelian_metric(SymmetricForm::diagonal({1, 1, -1, 1}));
  EXPECT_TRUE(flatness_check(flat).flat);
  for (const auto& id : splittable_ids()) {
    const auto m = catalog_metric(id);
    const CenterSplitting s = center_splitting(m);
    for (const RatVector& x : s.z_basis.columns())
      for (const RatVector& y : s.z_basis.columns())
        for (const RatVector& z : s.z_basis.columns()) EXPECT_TRUE(is_zero(curvature(m, x, y, z)));
  }
}

TEST(Curvature, DefinitionMatchesOracleAndCaseTable) {
  RatGen gen(35);
  for (const auto& id : splittable_ids()) {
    const auto m = catalog_metric(id);
    const CenterSplitting s = center_splitting(m);
    const LeviCivita lc(m);
    std::vector<std::pair<RatVector, bool>> pure;
    for (const RatVector& c : s.z_basis.columns()) pure.emplace_back(c, true);
    for (const RatVector& c : s.v_basis.columns()) pure.emplace_back(c, false);
    for (const auto& [x, xz] : pure)
      for (const auto& [y, yz] : pure)
        for (const auto& [z, zz] : pure) {
          const RatVector def = lc.curvature(x, y, z);
          EXPECT_EQ(def, koszul_curvature(m, x, y, z)) << id;
          EXPECT_EQ(def, case_table(m, s, x, xz, y, yz, z, zz)) << id << " " << xz << yz << zz;
        }
    for (int trial = 0; trial < 10; ++trial) {
      const RatVector x = gen.vec(m.dim()), y = gen.vec(m.dim()), z = gen.vec(m.dim());
      EXPECT_EQ(curvature_by_cases(m, s, x, y, z), lc.curvature(x, y, z));
    }
  }
}

TEST(Curvature, Symmetries) {
  RatGen gen(36);
  std::vector<MetricNilLieAlgebra> cases;
  for (const auto& id : {"h3_riemannian", "r_x_h3_lorentz", "heisenberg_2n1", "free3step2gen", "dim6_cotangent_h3"})
    cases.push_back(catalog_metric(id));
  cases.push_back(random_h3_metric(gen));
  for (const auto& m : cases) {
    const LeviCivita lc(m);
    const std::size_t n = m.dim();
    std::vector<RatMatrix> r(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) r[a * n + b] = lc.curvature_operator(unit_vector(n, a), unit_vector(n, b));
    const RatMatrix& g = m.metric().gram();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        EXPECT_EQ(r[a * n + b], -r[b * n + a]);
        for (std::size_t c = 0; c < n; ++c) {
          const RatVector bianchi = add(add(r[a * n + b].column(c), r[b * n + c].column(a)), r[c * n + a].column(b));
          EXPECT_TRUE(is_zero(bianchi));
          for (std::size_t d = 0; d < n; ++d) {
            const Rat rabcd = (g * r[a * n + b].column(c))[d];
            EXPECT_EQ(rabcd, (g * r[c * n + d].column(a))[b]);
            EXPECT_EQ(rabcd, -(g * r[a * n + b].column(d))[c]);
          }
        }
      }
  }
}

TEST(Curvature, BiInvariantMetrics) {
  for (const auto& id : {"free3step2gen", "dim6_cotangent_h3"}) {
    const auto m = catalog_metric(id);
    const LeviCivita lc(m);
    const std::size_t n = m.dim();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const RatVector x = unit_vector(n, a), y = unit_vector(n, b);
        EXPECT_EQ(lc.nabla(x, y), scale(Rat(1, 2), m.algebra().bracket(x, y)));
        EXPECT_EQ(lc.curvature_operator(x, y), Rat(-1, 4) * m.algebra().ad(m.algebra().bracket(x, y)));
      }
  }
  EXPECT_TRUE(flatness_check(catalog_metric("dim6_cotangent_h3")).flat);
  EXPECT_FALSE(flatness_check(catalog_metric("free3step2gen")).flat);
}

TEST(Flatness, Witness) {
  const FlatnessResult r = flatness_check(catalog_metric("h3_riemannian"));
  ASSERT_FALSE(r.flat);
  ASSERT_TRUE(r.witness);
  const auto [i, j, k] = *r.witness;
  EXPECT_FALSE(is_zero(curvature(catalog_metric("h3_riemannian"), e(3, i + 1), e(3, j + 1), e(3, k + 1))));
  EXPECT_FALSE(is_zero(curvature(catalog_metric("h3_riemannian"), e(3, 1), e(3, 2), e(3, 2))));
}

TEST(Sectional, Examples) {
  const auto h3 = catalog_metric("h3_riemannian");
  EXPECT_EQ(sectional_curvature(h3, e(3, 1), e(3, 2)), Rat(-3, 4));
  EXPECT_EQ(sectional_curvature(h3, e(3, 1), e(3, 3)), Rat(1, 4));
  const auto lor = catalog_metric("h3_lorentz_1");
  EXPECT_EQ(sectional_curvature(lor, e(3, 1), e(3, 3)), Rat(-1, 4));
  const auto rxh3 = catalog_metric("r_x_h3_lorentz");
  EXPECT_EQ(sectional_curvature(rxh3, e(4, 3), add(e(4, 3), e(4, 4))), Rat(0));
  try {
    (void)sectional_curvature(lor, add(e(3, 1), e(3, 3)), e(3, 2));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::DegeneratePlane);
  }
}

TEST(Sectional, OrthonormalPairsFollowTheSignedFormulas) {
  for (const auto& id : {"h3_riemannian", "h3_lorentz_1", "h3_lorentz_2", "heisenberg_2n1"}) {
    const auto m = catalog_metric(id);
    const CenterSplitting s = center_splitting(m);
    const auto& g = m.metric();
    std::vector<RatVector> basis;
    for (std::size_t i = 0; i < m.dim(); ++i) basis.push_back(unit_vector(m.dim(), i));
    for (const RatVector& x : basis)
      for (const RatVector& y : basis) {
        if (x == y || g.pair(x, y) != 0 || g.pair(x, x) * g.pair(x, x) != 1 || g.pair(y, y) * g.pair(y, y) != 1)
          continue;
        const Rat ex = g.pair(x, x), ey = g.pair(y, y);
        const bool xz = is_zero(s.v_coords(x)), yz = is_zero(s.v_coords(y));
        Rat expected;
        if (!xz && !yz) {
          const RatVector b = m.algebra().bracket(x, y);
          expected = Rat(-3, 4) * ex * ey * g.pair(b, b);
        } else if (xz != yz) {
          const RatVector& zc = xz ? x : y;
          const RatVector& vc = xz ? y : x;
          const RatVector jv = j_apply(s, zc, vc);
          expected = Rat(1, 4) * ex * ey * g.pair(jv, jv);
        } else {
          expected = 0;
        }
        EXPECT_EQ(sectional_curvature(m, x, y), expected) << id;
      }
  }
}

TEST(Ricci, TraceOracleAndBlocks) {
  const auto h3 = catalog_metric("h3_riemannian");
  const RicciReport r = ricci(h3);
  EXPECT_EQ(r.ric(0, 0), Rat(-1, 2));
  EXPECT_EQ(r.ric(2, 2), Rat(1, 2));
  EXPECT_EQ(r.ric(0, 2), Rat(0));
  EXPECT_TRUE(r.block_formulas_checked);
  EXPECT_TRUE(ricci(abelian_metric(SymmetricForm::diagonal({1, -1}))).ric.is_zero());

  RatGen gen(37);
  std::vector<MetricNilLieAlgebra> cases;
  for (const auto& id : {"h3_lorentz_1", "h3_lorentz_2", "r_x_h3_lorentz", "heisenberg_2n1", "free3step2gen"})
    cases.push_back(catalog_metric(id));
  for (int i = 0; i < 5; ++i) cases.push_back(random_h3_metric(gen));
  for (const auto& m : cases) {
    const RicciReport rep = ricci(m);
    EXPECT_EQ(rep.ric, koszul_ricci(m));
    EXPECT_TRUE(rep.ric.is_symmetric());
    EXPECT_EQ(m.metric().gram() * rep.transformation, rep.ric);
    if (!m.is_two_step()) continue;
    const CenterSplitting s = center_splitting(m);
    EXPECT_TRUE((s.v_basis.transpose() * rep.ric * s.z_basis).is_zero());
    for (const RatVector& zc : s.z_basis.columns()) EXPECT_TRUE(is_zero(s.v_coords(rep.transformation * zc)));
    for (const RatVector& vc : s.v_basis.columns()) EXPECT_TRUE(is_zero(s.z_coords(rep.transformation * vc)));
  }
  EXPECT_TRUE(ricci(catalog_metric("h3_lorentz_1")).block_formulas_checked);
  EXPECT_TRUE(ricci(catalog_metric("heisenberg_2n1")).block_formulas_checked);
}

TEST(Geodesic, TrivialCases) {
  const auto h3 = catalog_metric("h3_riemannian");
  const CenterSplitting s = center_splitting(h3);
  const auto line = geodesic(h3, s, {0.0}, {1.0, -2.0}, grid(2.0, 0.5));
  for (const auto& p : line) {
    EXPECT_NEAR(p.v[0], p.t, 1e-12);
    EXPECT_NEAR(p.v[1], -2.0 * p.t, 1e-12);
    EXPECT_NEAR(p.z[0], 0.0, 1e-12);
  }
  const auto central = geodesic(h3, s, {3.0}, {0.0, 0.0}, grid(2.0, 0.5));
  for (const auto& p : central) {
    EXPECT_NEAR(p.z[0], 3.0 * p.t, 1e-12);
    EXPECT_NEAR(std::abs(p.v[0]) + std::abs(p.v[1]), 0.0, 1e-12);
  }
}

TEST(Geodesic, RotatingVelocityOnH3) {
  const auto h3 = catalog_metric("h3_riemannian");
  const CenterSplitting s = center_splitting(h3);
  const auto samples = geodesic(h3, s, {1.0}, {1.0, 0.0}, grid(5.0, 0.1));
  ASSERT_EQ(samples.size(), 51u);
  for (const auto& p : samples) {
    EXPECT_NEAR(p.velocity[0], std::cos(p.t), 1e-12);
    EXPECT_NEAR(p.velocity[1], std::sin(p.t), 1e-12);
    EXPECT_NEAR(p.velocity[2], 1.0, 1e-12);
    EXPECT_NEAR(p.v[0], std::sin(p.t), 1e-12);
    EXPECT_NEAR(p.v[1], 1.0 - std::cos(p.t), 1e-12);
    // [v', v] = (cos s − 1) e3, so z(t) = t + ½(t − sin t).
    EXPECT_NEAR(p.z[0], p.t + 0.5 * (p.t - std::sin(p.t)), 1e-10);
    EXPECT_LE(p.residual, 1e-8);
  }
}

TEST(Geodesic, AgreesWithEulerArnoldOracle) {
  RatGen gen(38);
  for (const auto& id : {"h3_riemannian", "h3_lorentz_1", "h3_lorentz_2", "heisenberg_2n1", "r_x_h3_lorentz"}) {
    const auto m = catalog_metric(id);
    const CenterSplitting s = center_splitting(m);
    const Rk4Oracle oracle(m);
    const auto t = grid(5.0, 0.25);
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<double> z0(s.dim_z()), v0(s.dim_v());
      for (auto& x : z0) x = gen.real(-1.5, 1.5);
      for (auto& x : v0) x = gen.real(-1.5, 1.5);
      const auto samples = geodesic(m, s, z0, v0, t);
      const Eigen::VectorXd u0 = ambient_velocity(s, z0, v0);
      const auto ref = oracle.run(u0, t, 1e-3);
      const double speed0 = metric_pair(m, samples.front().velocity, samples.front().velocity);
      for (std::size_t k = 0; k < t.size(); ++k) {
        const auto n = static_cast<Eigen::Index>(m.dim());
        for (Eigen::Index i = 0; i < n; ++i) {
          EXPECT_NEAR(samples[k].velocity[static_cast<std::size_t>(i)], ref[k](i), 1e-6) << id;
          EXPECT_NEAR(samples[k].position[static_cast<std::size_t>(i)], ref[k](n + i), 1e-6) << id;
        }
        EXPECT_LE(samples[k].residual, 1e-8) << id;
        EXPECT_NEAR(metric_pair(m, samples[k].velocity, samples[k].velocity), speed0, 1e-9) << id;
      }
    }
  }
}

TEST(OrthonormalBasis, RationalSearch) {
  const SymmetricForm lor = SymmetricForm::diagonal({1, 1, -1});
  const auto b = rational_orthonormal_basis(lor, RatMatrix::identity(3));
  ASSERT_TRUE(b);
  const RatMatrix gram = lor.restricted_gram(*b);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(gram(i, j) * gram(i, j), Rat(i == j ? 1 : 0));
  const SymmetricForm neutral(RatMatrix{{0, 1}, {1, 0}});
  const auto nb = rational_orthonormal_basis(neutral, RatMatrix::identity(2));
  ASSERT_TRUE(nb);
  EXPECT_EQ(signature(neutral.restrict_to(*nb)), (Signature{1, 1, 0}));
  EXPECT_FALSE(rational_orthonormal_basis(SymmetricForm::diagonal({2}), RatMatrix::identity(1)));
}
