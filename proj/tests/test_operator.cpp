#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "isoperim/grid.hpp"
#include "isoperim/model_measure.hpp"
#include "isoperim/profile_operator.hpp"

using namespace isoperim;

TEST_CASE("kernel integral equals a quantile difference") {
    // d/ds F^{-1}(s) = 1/I(s), so int_a^b ds/I(s) = F^{-1}(b) - F^{-1}(a).
    for (double r : {1.2, 2.0}) {
        ModelMeasure m(r);
        ProfileWeightedOperator op(m.iso_profile());
        QuantileFunction chi = indicator_tester(0.4);
        for (double t : {1e-3, 0.05, 0.2}) {
            double ref = m.quantile(0.4) - m.quantile(t);
            CHECK(op.kernel_integral(chi, t) == doctest::Approx(ref).epsilon(1e-8));
        }
    }
}

TEST_CASE("exponential-profile kernel in closed form") {
    ProfileWeightedOperator op(ModelMeasure(1.0).iso_profile());
    QuantileFunction chi = indicator_tester(0.5);
    CHECK(op.kernel_integral(chi, 0.25) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    for (double t : {0.01, 0.1, 0.3})
        CHECK(op.kernel_integral(chi, t) ==
              doctest::Approx(std::log(0.5 / t)).epsilon(1e-10));
    CHECK(op.kernel_integral(chi, 0.7) == doctest::Approx(0.0));
}

TEST_CASE("kernel integral rejects endpoints") {
    ProfileWeightedOperator op(ModelMeasure(1.5).iso_profile());
    QuantileFunction chi = indicator_tester(0.5);
    CHECK_THROWS_AS(op.kernel_integral(chi, 0.0), std::domain_error);
    CHECK_THROWS_AS(op.kernel_integral(chi, 1.0), std::domain_error);
}

TEST_CASE("apply carries the profile-over-t prefactor") {
    ProfileWeightedOperator op(ModelMeasure(1.0).iso_profile());
    QuantileFunction chi = indicator_tester(0.5);
    double t = 0.1;
    CHECK(op.apply(chi, t) ==
          doctest::Approx((std::min(t, 1.0 - t) / t) * std::log(0.5 / t)).epsilon(1e-10));
}

TEST_CASE("operator images of admissible data are nonincreasing") {
    ProfileWeightedOperator op(ModelMeasure(2.0).iso_profile());
    QuantileFunction f = power_tester(0.5, 64);
    auto ts = refined_grid(256, 1e-5);
    auto img = op.apply_on_grid(f, ts);
    for (std::size_t i = 1; i < img.size(); ++i)
        CHECK(img[i] <= img[i - 1] * (1.0 + 1e-10) + 1e-14);
}

TEST_CASE("image norms of a constant callable") {
    ProfileWeightedOperator op(ModelMeasure(2.0).iso_profile());
    auto one = [](double) { return 1.0; };
    CHECK(op.image_norm(RINormSpec::parse("Linf"), one) == doctest::Approx(1.0));
    CHECK(op.image_norm(RINormSpec::parse("L1"), one) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(op.image_norm(RINormSpec::parse("Lp:2"), one) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(op.image_norm(RINormSpec::parse("Lorentz:2,inf"), one) ==
          doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("hardy-type norm estimate on the exponential profile is 1") {
    // For data supported in (0,1/2], Q on L1 has norm exactly 1 at r = 1.
    ProfileWeightedOperator op(ModelMeasure(1.0).iso_profile());
    std::vector<QuantileFunction> testers{indicator_tester(0.5), power_tester(0.5, 128)};
    double est = op.estimate_operator_norm(RINormSpec::parse("L1"), testers);
    CHECK(est == doctest::Approx(1.0).epsilon(2e-3));
    CHECK(est <= 1.0 + 1e-6);
}

TEST_CASE("norm estimate requires a nonzero tester") {
    ProfileWeightedOperator op(ModelMeasure(1.0).iso_profile());
    std::vector<QuantileFunction> zero{QuantileFunction({0.0, 1.0}, {0.0})};
    CHECK_THROWS_AS(op.estimate_operator_norm(RINormSpec::parse("L1"), zero),
                    std::invalid_argument);
}

TEST_CASE("tester shapes") {
    QuantileFunction chi = indicator_tester(0.3);
    CHECK(chi.value_at(0.2) == 1.0);
    CHECK(chi.value_at(0.5) == 0.0);
    CHECK(chi.total_integral() == doctest::Approx(0.3));

    QuantileFunction pw = power_tester(0.5, 64);
    CHECK(pw.value_at(0.6) == 0.0); // supported in (0, 1/2]
    CHECK(pw.sup() > 100.0);        // blows up toward 0 like s^{-1/2}
    const auto& v = pw.values();
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] <= v[i - 1]);
}
