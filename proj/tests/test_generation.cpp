#include <gtest/gtest.h>

#include <chrono>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "ybx/generation.hpp"

namespace ybx {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> sorted_target(Dimension d, Rng& rng) {
  const StateVector z = complex_gaussian(d.size(), rng);
  const double nz = norm(z);
  std::vector<double> k(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) k[i] = std::abs(z[i]) / nz;
  std::sort(k.begin(), k.end(), std::greater<>());
  return k;
}

TEST(ProductState, Examples) {
  const auto a = product_state(Dimension(3), std::vector<double>{0.0});
  EXPECT_EQ(a, (StateVector{1, 0, 0}));

  const auto b = product_state(Dimension(3), std::vector<double>{kPi / 4.0});
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(b[0].real(), h, 1e-15);
  EXPECT_NEAR(b[1].real(), h, 1e-15);
  EXPECT_EQ(b[2], cplx(0.0));

  const auto c = product_state(Dimension(4), std::vector<double>{kPi / 3.0, kPi / 4.0});
  EXPECT_NEAR(c[0].real(), 0.5, 1e-15);
  EXPECT_NEAR(c[1].real(), std::sqrt(6.0) / 4.0, 1e-15);
  EXPECT_NEAR(c[2].real(), std::sqrt(6.0) / 4.0, 1e-15);
  EXPECT_EQ(c[3], cplx(0.0));

  EXPECT_EQ(product_state(Dimension(2), {}), (StateVector{1, 0}));
}

TEST(ProductState, NormalizedForRandomAngles) {
  Rng rng = make_stream(61, 0);
  std::uniform_real_distribution<double> phi(0.0, kPi / 2.0);
  for (int dv = 2; dv <= 8; ++dv) {
    std::vector<double> angles(static_cast<std::size_t>(dv - 2));
    for (auto& a : angles) a = phi(rng);
    EXPECT_NEAR(norm(product_state(Dimension(dv), angles)), 1.0, 1e-15);
  }
}

TEST(ProductState, WrongAngleCount) {
  try {
    (void)product_state(Dimension(4), std::vector<double>{0.1});
    FAIL() << "expected WrongAngleCount";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WrongAngleCount);
  }
  EXPECT_THROW(GenerationParams(Dimension(3), 0.0, {}), Error);
}

TEST(Generate, QubitBell) {
  const auto s = generate(GenerationParams(Dimension(2), kPi / 4.0));
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(s.amplitude(0, 0) - h), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.amplitude(1, 1) - cplx(0, -h)), 0.0, 1e-15);
  EXPECT_EQ(s.amplitude(0, 1), cplx(0.0));
}

TEST(Generate, IdentityAtZeroIsSeparable) {
  const auto s = generate(GenerationParams(Dimension(3), 0.0, {0.9}));
  EXPECT_NEAR(s.amplitude(0, 0).real(), std::cos(0.9), 1e-15);
  EXPECT_NEAR(s.amplitude(0, 1).real(), std::sin(0.9), 1e-15);
  const auto inv = invariants(s);
  EXPECT_NEAR(inv.Iprime[0], 0.0, 1e-15);
  EXPECT_NEAR(inv.Iprime[1], 0.0, 1e-15);
}

TEST(Generate, QutritMaximal) {
  const auto inv = invariants(generate(GenerationParams(Dimension(3), kPi / 3.0, {0.0})));
  EXPECT_NEAR(inv.Iprime[0], 1.0, 1e-10);
  EXPECT_NEAR(inv.Iprime[1], 1.0, 1e-10);
}

TEST(Generate, CustomUa) {
  // U_A = identity gives the default pipeline.
  const GenerationParams p(Dimension(3), 0.8, {0.4});
  const auto a = generate(p);
  const auto b = generate(p, ComplexMatrix::identity(3));
  EXPECT_EQ(a.vector(), b.vector());
}

TEST(ClosedForm, QubitFamily) {
  for (double t : {0.0, 0.3, 1.1, 2.9}) {
    const auto s = closed_form_direct(Dimension(2), t);
    EXPECT_NEAR(std::abs(s.amplitude(0, 0) - std::cos(t)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.amplitude(1, 1) - cplx(0, -std::sin(t))), 0.0, 1e-15);
  }
}

TEST(ClosedForm, QutritHalfPi) {
  const auto s = closed_form_direct(Dimension(3), kPi / 2.0);
  EXPECT_NEAR(std::abs(s.amplitude(0, 0) - cplx(0, 1.0 / 3.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.amplitude(1, 1) - cplx(0, -2.0 / 3.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.amplitude(2, 2) - cplx(0, -2.0 / 3.0)), 0.0, 1e-15);
}

TEST(ClosedForm, QuquartHalfPi) {
  const auto s = closed_form_direct(Dimension(4), kPi / 2.0);
  EXPECT_NEAR(std::abs(s.amplitude(0, 0) - cplx(0, 0.5)), 0.0, 1e-15);
  for (std::size_t j = 1; j < 4; ++j) EXPECT_NEAR(std::abs(s.amplitude(j, j) - cplx(0, -0.5)), 0.0, 1e-15);
}

TEST(ClosedForm, MatchesPipeline) {
  Rng rng = make_stream(62, 0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (int dv = 2; dv <= 8; ++dv) {
    const Dimension d(dv);
    for (int trial = 0; trial < 100; ++trial) {
      const double t = angle(rng);
      const auto a = closed_form_direct(d, t);
      const auto b = generate(GenerationParams(d, t, std::vector<double>(d.size() - 2, 0.0)));
      double worst = 0.0;
      for (std::size_t k = 0; k < d.pair_size(); ++k) {
        worst = std::max(worst, std::abs(a.vector()[k] - b.vector()[k]));
      }
      EXPECT_LE(worst, 1e-12);
    }
  }
}

TEST(Generate, LocalUnitariesAfterwardsKeepInvariants) {
  Rng rng = make_stream(63, 0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> phi(0.0, kPi / 2.0);
  for (int dv = 2; dv <= 6; ++dv) {
    const Dimension d(dv);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> phis(d.size() - 2);
      for (auto& p : phis) p = phi(rng);
      const auto s = generate(GenerationParams(d, angle(rng), phis));
      const auto v = kron(haar_unitary(d.size(), rng), haar_unitary(d.size(), rng));
      const auto a = invariants(s);
      const auto b = invariants(TwoQuditState(d, matvec(v, s.vector()), 1e-10));
      for (std::size_t j = 0; j < a.Iprime.size(); ++j) EXPECT_NEAR(a.Iprime[j], b.Iprime[j], 1e-10);
    }
  }
}

TEST(MaximallyEntangledBasis, OrthonormalAndMaximal) {
  const auto basis = maximally_entangled_basis();
  ASSERT_EQ(basis.size(), 9u);
  for (std::size_t a = 0; a < 9; ++a) {
    for (std::size_t b = 0; b < 9; ++b) {
      const cplx g = inner(basis[a].vector(), basis[b].vector());
      EXPECT_NEAR(std::abs(g - (a == b ? 1.0 : 0.0)), 0.0, 1e-12);
    }
    EXPECT_NEAR(invariants(basis[a]).concurrence, 1.0, 1e-10);
  }
  const double s = 1.0 / std::sqrt(3.0);
  const cplx omega = std::polar(1.0, 2.0 * kPi / 3.0);
  EXPECT_NEAR(std::abs(basis[0].amplitude(0, 0) - cplx(0, -s) * omega), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(basis[0].amplitude(1, 1) - cplx(0, -s)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(basis[0].amplitude(2, 2) - cplx(0, -s)), 0.0, 1e-15);
}

TEST(Contour, Endpoints) {
  const auto ob = contour_curve(Curve::OB, 50);
  EXPECT_EQ(ob.front().xi, 0.0);
  EXPECT_NEAR(ob.front().iprime[0], 0.0, 1e-10);
  EXPECT_NEAR(ob.front().iprime[1], 0.0, 1e-10);
  EXPECT_NEAR(ob.back().iprime[0], 0.75, 1e-10);
  EXPECT_NEAR(ob.back().iprime[1], 27.0 / 32.0, 1e-10);

  const auto og = contour_curve(Curve::OG, 50);
  EXPECT_NEAR(og.front().iprime[0], 0.0, 1e-10);
  EXPECT_NEAR(og.back().iprime[0], 1.0, 1e-10);
  EXPECT_NEAR(og.back().iprime[1], 1.0, 1e-10);

  const auto gb = contour_curve(Curve::GB, 50);
  EXPECT_NEAR(gb.front().iprime[0], 1.0, 1e-10);
  EXPECT_NEAR(gb.front().iprime[1], 1.0, 1e-10);
  EXPECT_EQ(gb.back().xi, kPi / 2.0);
  EXPECT_NEAR(gb.back().iprime[0], 0.75, 1e-10);
  EXPECT_NEAR(gb.back().iprime[1], 27.0 / 32.0, 1e-10);
}

TEST(Contour, MaximalAngleIsNotPiOverThree) {
  // The second family is maximally entangled at cos xi = 1/sqrt3, which is
  // about 0.9553, short of pi/3.
  EXPECT_NEAR(std::cos(maximal_contour_angle()), 1.0 / std::sqrt(3.0), 1e-15);
  const auto [i1, i2] = oracle::qutrit_iprime(0.5, std::sqrt(3.0 / 8.0), std::sqrt(3.0 / 8.0));
  EXPECT_NEAR(i1, 0.984375, 1e-15);
  EXPECT_LT(i2, 1.0 - 1e-3);
}

TEST(Contour, Errors) {
  try {
    (void)parse_curve("XY");
    FAIL() << "expected UnknownCurve";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownCurve);
  }
  EXPECT_THROW((void)contour_curve(Curve::OB, 1), Error);
  EXPECT_EQ(parse_curve("GB"), Curve::GB);
}

TEST(Region, ForcedZeroAngleIsOrigin) {
  const Dimension d(3);
  const auto s = yb_sample(RMatrixFamily(d), GenerationParams(d, 0.0, {0.7}));
  EXPECT_EQ(s.source, Ensemble::YangBaxter);
  EXPECT_NEAR(s.iprime[0], 0.0, 1e-15);
  EXPECT_NEAR(s.iprime[1], 0.0, 1e-15);
}

TEST(Region, DeterministicAndWorkerIndependent) {
  for (auto ens : {Ensemble::Schmidt, Ensemble::YangBaxter}) {
    const auto a = sample_region(Dimension(3), 10000, 99, ens, 1);
    const auto b = sample_region(Dimension(3), 10000, 99, ens, 1);
    const auto c = sample_region(Dimension(3), 10000, 99, ens, 3);
    const auto other = sample_region(Dimension(3), 10000, 100, ens, 1);
    ASSERT_EQ(a.size(), 10000u);
    bool differs = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
      EXPECT_EQ(a[k].iprime, b[k].iprime);
      EXPECT_EQ(a[k].iprime, c[k].iprime);
      EXPECT_EQ(a[k].kappa, c[k].kappa);
      EXPECT_EQ(a[k].phi, c[k].phi);
      differs = differs || a[k].iprime != other[k].iprime;
    }
    EXPECT_TRUE(differs);
  }
}

TEST(Region, SampleRangesAndUnitInterval) {
  const auto yb = sample_region(Dimension(4), 5000, 7, Ensemble::YangBaxter);
  for (const auto& s : yb) {
    EXPECT_GE(s.theta, 0.0);
    EXPECT_LT(s.theta, 2.0 * kPi);
    ASSERT_EQ(s.phi.size(), 2u);
    for (double p : s.phi) {
      EXPECT_GE(p, 0.0);
      EXPECT_LE(p, kPi / 2.0);
    }
    for (double v : s.iprime) {
      EXPECT_GE(v, -1e-10);
      EXPECT_LE(v, 1.0 + 1e-10);
    }
  }
  const auto sc = sample_region(Dimension(4), 5000, 7, Ensemble::Schmidt);
  for (const auto& s : sc) {
    EXPECT_TRUE(std::isnan(s.theta));
    EXPECT_TRUE(s.phi.empty());
    ASSERT_EQ(s.kappa.size(), 4u);
    for (double v : s.iprime) {
      EXPECT_GE(v, -1e-10);
      EXPECT_LE(v, 1.0 + 1e-10);
    }
  }
}

TEST(Region, QutritSamplesInsideCurvedTriangle) {
  const Dimension d(3);
  for (auto [ens, n] : {std::pair{Ensemble::Schmidt, std::size_t{1000000}},
                        std::pair{Ensemble::YangBaxter, std::size_t{200000}}}) {
    const auto samples = sample_region(d, n, 2024, ens);
    std::size_t outside = 0;
    for (const auto& s : samples) {
      if (!oracle::QutritRegion::contains(s.iprime[0], s.iprime[1], 1e-8)) ++outside;
    }
    EXPECT_EQ(outside, 0u) << to_string(ens);
  }
}

TEST(Coverage, Definition) {
  auto sample = [](double x, double y) {
    RegionSample s;
    s.iprime = {x, y};
    return s;
  };
  const std::vector<RegionSample> target{sample(0.1, 0.1), sample(0.15, 0.12), sample(0.9, 0.9)};
  const std::vector<RegionSample> half{sample(0.12, 0.13)};
  const auto r = coverage_report(target, half, 10);
  EXPECT_EQ(r.bins_target, 2u);
  EXPECT_EQ(r.bins_covered, 1u);
  EXPECT_DOUBLE_EQ(r.coverage, 0.5);
  ASSERT_EQ(r.uncovered.size(), 1u);
  EXPECT_EQ(r.uncovered[0], (std::vector<int>{9, 9}));

  const auto self = coverage_report(target, target, 10);
  EXPECT_EQ(self.coverage, 1.0);
  EXPECT_EQ(self.sample_counts, (std::pair<std::size_t, std::size_t>{3, 3}));

  // Values at the upper edge and a hair outside [0, 1] land in the edge bins.
  const std::vector<RegionSample> edge{sample(1.0, -1e-12)};
  const auto e = coverage_report(edge, edge, 10);
  EXPECT_EQ(e.bins_target, 1u);
}

TEST(Coverage, Errors) {
  const std::vector<RegionSample> empty;
  RegionSample s;
  s.iprime = {0.1, 0.2};
  const std::vector<RegionSample> one{s};
  try {
    (void)coverage_report(empty, one, 10);
    FAIL() << "expected EmptyEnsemble";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyEnsemble);
  }
  RegionSample t;
  t.iprime = {0.1, 0.2, 0.3};
  const std::vector<RegionSample> mismatched{t};
  EXPECT_THROW((void)coverage_report(one, mismatched, 10), Error);
}

TEST(Solve, SeparableTarget) {
  const std::vector<double> target{1.0, 0.0, 0.0};
  const auto r = solve_parameters(Dimension(3), target, 1e-10);
  EXPECT_EQ(r.params.theta, 0.0);
  ASSERT_EQ(r.params.phi.size(), 1u);
  EXPECT_EQ(r.params.phi[0], 0.0);
  EXPECT_EQ(r.residual, 0.0);
}

TEST(Solve, QutritLandmarks) {
  const double s = 1.0 / std::sqrt(3.0);
  for (const auto& target : {std::vector<double>{s, s, s}, std::vector<double>{2.0 / 3, 2.0 / 3, 1.0 / 3}}) {
    const auto r = solve_parameters(Dimension(3), target, 1e-5);
    EXPECT_LE(r.residual, 1e-5);
    const auto kappa = schmidt_coefficients(generate(r.params));
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(kappa[k], target[k], 1e-5);
  }
  // The known solutions themselves.
  const auto at_third = schmidt_coefficients(generate(GenerationParams(Dimension(3), kPi / 3.0, {0.0})));
  for (double k : at_third) EXPECT_NEAR(k, s, 1e-8);
  const auto at_half = schmidt_coefficients(generate(GenerationParams(Dimension(3), kPi / 2.0, {0.0})));
  EXPECT_NEAR(at_half[0], 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(at_half[2], 1.0 / 3.0, 1e-12);
}

TEST(Solve, QubitsReachEverySpectrum) {
  Rng rng = make_stream(64, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto target = sorted_target(Dimension(2), rng);
    const auto r = solve_parameters(Dimension(2), target, 1e-10);
    EXPECT_TRUE(r.params.phi.empty());
    EXPECT_LE(r.residual, 1e-10);
  }
}

TEST(Solve, RecoversSpectraOfGeneratedStates) {
  Rng rng = make_stream(65, 0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> phi(0.0, kPi / 2.0);
  for (int dv = 3; dv <= 4; ++dv) {
    const Dimension d(dv);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> phis(d.size() - 2);
      for (auto& p : phis) p = phi(rng);
      const auto target = schmidt_decompose(generate(GenerationParams(d, angle(rng), phis))).kappa;
      const auto r = solve_parameters(d, target, 1e-5);
      EXPECT_LE(r.residual, 1e-5);
    }
  }
}

TEST(Solve, TwoTermSpectrumOffTheFamily) {
  // kappa = (cos 0.55, sin 0.55, 0) lies on the OB edge at I'_1 ~ 0.59, where
  // real product inputs top out near I'_2 = 0.64 instead of 0.676.
  const std::vector<double> target{std::cos(0.55), std::sin(0.55), 0.0};
  try {
    (void)solve_parameters(Dimension(3), target, 1e-5);
    FAIL() << "expected NoSolutionFound";
  } catch (const NoSolutionFound& e) {
    EXPECT_GT(e.residual(), 1e-3);
    EXPECT_EQ(e.best().phi.size(), 1u);
  }
}

TEST(Solve, ReportsFailureWithBestPoint) {
  // A one-point grid and no simplex steps cannot reach a generic target.
  const std::vector<double> target{0.8, 0.6};
  try {
    (void)solve_parameters(Dimension(2), target, 1e-12, SolverBudget{2, 0, 1});
    FAIL() << "expected NoSolutionFound";
  } catch (const NoSolutionFound& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoSolutionFound);
    EXPECT_GT(e.residual(), 1e-12);
    EXPECT_EQ(e.best().d.value(), 2);
  }
}

TEST(Solve, RejectsBadTargets) {
  EXPECT_THROW((void)solve_parameters(Dimension(3), std::vector<double>{0.5, 0.5, 0.5}, 1e-5), Error);
  EXPECT_THROW((void)solve_parameters(Dimension(3), std::vector<double>{0.0, 1.0, 0.0}, 1e-5), Error);
  EXPECT_THROW((void)solve_parameters(Dimension(3), std::vector<double>{1.0, 0.0}, 1e-5), Error);
}

}  // namespace
}  // namespace ybx
