#include <stdexcept>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "relutil/bounds.hpp"
#include "relutil/returns.hpp"
#include "relutil/rng.hpp"

using namespace relutil;

TEST_CASE("deviation term closed form") {
    CHECK(mcdiarmid_deviation(2520, 0.05) ==
          doctest::Approx(0.024380142003644183).epsilon(1e-9));
    // direct formula at another point
    CHECK(mcdiarmid_deviation(100, 0.1) ==
          doctest::Approx(std::sqrt(std::log(10.0) / 200.0)).epsilon(1e-12));
    CHECK_THROWS_AS(mcdiarmid_deviation(0, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(mcdiarmid_deviation(100, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(mcdiarmid_deviation(100, 1.0), std::invalid_argument);
}

TEST_CASE("chaining constant matches its closed form") {
    // 12 * integral_0^1 sqrt(ln(5/z)) dz
    //   = 12 * (sqrt(ln 5) + 5 (sqrt(pi)/2) erfc(sqrt(ln 5)))
    double l5 = std::sqrt(std::log(5.0));
    double closed = 12.0 * (l5 + 5.0 * 0.5 * std::sqrt(M_PI) * std::erfc(l5));
    double c1 = dudley_constant() / 2.0;
    CHECK(c1 == doctest::Approx(closed).epsilon(1e-6));
    CHECK(c1 == doctest::Approx(19.0943341158178).epsilon(1e-6));
    CHECK(dudley_constant() == doctest::Approx(38.1886682316356).epsilon(1e-6));
}

TEST_CASE("quadrature converges as the tolerance shrinks") {
    double loose = dudley_constant_quad(1e-3);
    double tight = dudley_constant_quad(1e-10);
    CHECK(std::abs(loose - tight) < 2e-3);
    CHECK(std::abs(tight - 38.1886682316356) < 1e-7);
}

TEST_CASE("complexity bound in the Lipschitz case") {
    BoundInputs in;
    in.n = 2520;
    in.d = 2;
    in.alpha = 1.0;
    CHECK(rademacher_bound(in) == doctest::Approx(0.046909138127584935).epsilon(1e-9));
    // closed form 2 A K sqrt(2 ln d / n)
    CHECK(rademacher_bound(in) ==
          doctest::Approx(2.0 * std::sqrt(2.0 * std::log(2.0) / 2520.0)).epsilon(1e-12));
    BoundReport rep = make_bound_report(in);
    CHECK(rep.branch == "lipschitz");
}

TEST_CASE("complexity bound in the Hoelder case") {
    BoundInputs in;
    in.n = 10000;
    in.d = 3;
    in.alpha = 0.5;
    // C A K sqrt((d-1)/(alpha n)) = C * sqrt(2 / 5000) = C * 0.02
    CHECK(rademacher_bound(in) ==
          doctest::Approx(38.1886682316356 * 0.02).epsilon(1e-6));
    CHECK(make_bound_report(in).branch == "holder");
}

TEST_CASE("estimation error and gap bounds add the right deviation terms") {
    BoundInputs in;
    in.n = 2520;
    in.d = 2;
    in.alpha = 1.0;
    in.delta = 0.05;
    CHECK(estimation_error_bound(in) ==
          doctest::Approx(0.10101719766070469).epsilon(1e-9));
    CHECK(empirical_gap_bound(in) == doctest::Approx(0.07128928013122912).epsilon(1e-9));
    double rad = rademacher_bound(in);
    CHECK(estimation_error_bound(in) ==
          doctest::Approx(rad + std::sqrt(2.0 / 2520.0 * std::log(2.0 / 0.05)))
              .epsilon(1e-12));
    CHECK(empirical_gap_bound(in) ==
          doctest::Approx(rad + std::sqrt(std::log(1.0 / 0.05) / (2.0 * 2520.0)))
              .epsilon(1e-12));
}

TEST_CASE("subsampled-solver bound composes its three terms") {
    BoundInputs in;
    in.n = 10000;
    in.d = 2;
    in.alpha = 1.0;
    in.delta = 0.05;
    in.L_n = 1.0;
    in.m = 1000000;
    CHECK(seg_error_bound(in) == doctest::Approx(0.06192951213283713).epsilon(1e-9));
    double expected = rademacher_bound(in) + 3.0 * mcdiarmid_deviation(10000, 0.05) +
                      2.0 * 1.0 * std::sqrt(std::log(2.0) / 1000000.0);
    CHECK(seg_error_bound(in) == doctest::Approx(expected).epsilon(1e-12));
    BoundReport rep = make_bound_report(in);
    REQUIRE(rep.seg_bound.has_value());
    CHECK(*rep.seg_bound == doctest::Approx(0.06192951213283713).epsilon(1e-9));
    // without L_n and m there is no subsampling bound
    BoundInputs plain = in;
    plain.L_n.reset();
    plain.m.reset();
    CHECK_FALSE(make_bound_report(plain).seg_bound.has_value());
    BoundInputs bad = in;
    bad.L_n = 0.0;
    CHECK_THROWS_AS(seg_error_bound(bad), std::invalid_argument);
}

TEST_CASE("bounds decrease in n and increase in d") {
    BoundInputs a;
    a.n = 1000;
    a.d = 5;
    a.alpha = 0.5;
    BoundInputs more_data = a;
    more_data.n = 4000;
    CHECK(estimation_error_bound(more_data) < estimation_error_bound(a));
    BoundInputs more_assets = a;
    more_assets.d = 20;
    CHECK(estimation_error_bound(more_assets) > estimation_error_bound(a));
    // alpha = 1 with the same inputs is far tighter than small alpha
    BoundInputs lip = a;
    lip.alpha = 1.0;
    CHECK(rademacher_bound(lip) < rademacher_bound(a));
}

TEST_CASE("parameter domains are enforced") {
    BoundInputs in;
    in.alpha = 1.5;
    CHECK_THROWS_AS(rademacher_bound(in), std::invalid_argument);
    in.alpha = 0.0;
    CHECK_THROWS_AS(rademacher_bound(in), std::invalid_argument);
    in.alpha = 0.5;
    in.d = 0;
    CHECK_THROWS_AS(rademacher_bound(in), std::invalid_argument);
    in.d = 2;
    in.n = 0;
    CHECK_THROWS_AS(rademacher_bound(in), std::invalid_argument);
}

TEST_CASE("sign-symmetry estimate is near zero for a single asset") {
    // d = 1: relative payoffs are identically 1 and the signed average is a
    // scaled random walk; |estimate| <= 3 standard errors of 1/sqrt(n trials)
    ReturnsMatrix R(64, 1, std::vector<double>(64, 1.3));
    RademacherEstimate est =
        empirical_rademacher(R, UtilityFunction::power(0.5), 400, RngSeed{61, 0});
    CHECK(std::abs(est.estimate) < 3.0 / std::sqrt(64.0 * 400.0));
    CHECK(est.trials == 400);
    CHECK(est.std_error > 0.0);
}

TEST_CASE("sign-symmetry estimate obeys the Massart bound on random matrices") {
    Rng rng(RngSeed{62, 0});
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 20 + rng.below(200);
        std::size_t d = 1 + rng.below(10);
        double alpha = rng.uniform_in(0.1, 1.0);
        std::vector<double> vals(n * d);
        for (auto& v : vals) {
            v = rng.uniform_in(0.5, 2.0);
        }
        ReturnsMatrix R(n, d, vals);
        auto u = UtilityFunction::power(alpha);
        RademacherEstimate est = empirical_rademacher(
            R, u, 200, RngSeed{62, static_cast<std::uint64_t>(trial + 1)});
        // the signed sup over the simplex is attained at a vertex, so the
        // class is the d columns a_kj = r_k^j / (r_k*)^alpha with envelope
        // A_emp = max_k (r_k*)^(1-alpha); Massart gives
        // A_emp sqrt(2 ln d / n) up to Monte-Carlo error
        double a_emp = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            auto [idx, rstar] = best_return(R.row(k));
            a_emp = std::max(a_emp, std::pow(rstar, 1.0 - alpha));
        }
        double massart = a_emp * std::sqrt(2.0 * std::log(std::max<std::size_t>(d, 2)) /
                                           static_cast<double>(n));
        CHECK(est.estimate <= massart + 3.0 * est.std_error + 1e-12);
    }
}
