#include <catch2/catch_amalgamated.hpp>

#include "sclforge/coarse.hpp"
#include "sclforge/json_io.hpp"

using namespace sclforge;

namespace {
ExtRational q(long num, long den = 1) { return ExtRational(make_rational(num, den)); }
}  // namespace

TEST_CASE("d_plus") {
    CHECK(d_plus(q(7), true) == q(0));
    CHECK(d_plus(q(0), false) == q(1, 2));
    CHECK(d_plus(ExtRational::inf(), false) == ExtRational::inf());
    CHECK(d_plus(q(3, 2), false) == q(2));
}

TEST_CASE("metric sample validation") {
    auto ok = MetricSample({"x", "y"}, {{q(0), q(1)}, {q(1), q(0)}});
    CHECK(ok.size() == 2);
    CHECK(ok.index_of("y") == 1);
    CHECK_THROWS_AS(ok.index_of("z"), PreconditionError);

    CHECK_THROWS_AS(MetricSample({"x", "y"}, {{q(1), q(1)}, {q(1), q(0)}}), PreconditionError);
    CHECK_THROWS_AS(MetricSample({"x", "y"}, {{q(0), q(1)}, {q(2), q(0)}}), PreconditionError);
    CHECK_THROWS_AS(MetricSample({"x", "y", "z"},
                                 {{q(0), q(1), q(5)}, {q(1), q(0), q(1)}, {q(5), q(1), q(0)}}),
                    PreconditionError);
}

TEST_CASE("directed radius and asymptotics") {
    MetricSample s({"a", "b", "c"},
                   {{q(0), q(1, 2), ExtRational::inf()},
                    {q(1, 2), q(0), ExtRational::inf()},
                    {ExtRational::inf(), ExtRational::inf(), q(0)}});
    CHECK(directed_radius(s, {0, 1}, {0, 1}) == q(0));
    CHECK(directed_radius(s, {0}, {1}) == q(1, 2));
    CHECK(directed_radius(s, {0}, {2}) == ExtRational::inf());

    auto [r1, r2] = asymptotic_check(s, {0}, {0, 1});
    CHECK(r1 == q(0));
    CHECK(r2 == q(1, 2));

    CHECK_THROWS_AS(directed_radius(s, {}, {0}), PreconditionError);
}

TEST_CASE("coarse homomorphism defect") {
    CHECK(coarse_hom_defect({}) == q(0));
    CHECK(coarse_hom_defect({{"g", "h", q(0)}}) == q(0));
    CHECK(coarse_hom_defect({{"g", "h", q(2)}, {"u", "v", q(1, 2)}}) == q(2));
}

TEST_CASE("metric sample JSON round trip") {
    MetricSample s({"p", "q"}, {{q(0), ExtRational::inf()}, {ExtRational::inf(), q(0)}});
    Json j = metric_sample_to_json(s);
    MetricSample back = metric_sample_from_json(j);
    CHECK(back.size() == 2);
    CHECK(back.dist(0, 1) == ExtRational::inf());
    CHECK(metric_sample_to_json(back) == j);
}
