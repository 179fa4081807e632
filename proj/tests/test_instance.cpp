#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cml/instance.hpp"
#include "cml/interval.hpp"
#include "cml/suites.hpp"

#include <random>

using namespace cml;

TEST_CASE("instance invariants") {
    const Instance inst = make_instance({{3, 0, 5}, {2, 2, 1}});
    CHECK(inst.jobs() == 2);
    CHECK(inst.machines() == 3);
    CHECK(inst.min_weight(0) == 3);
    CHECK(inst.min_weight(1) == 1);
    CHECK(inst.strategies(0) == std::vector<MachineIndex>{0, 2});
    CHECK_FALSE(inst.available(0, 1));
    CHECK_THROWS_AS(inst.w(0, 1), UsageError);

    CHECK_THROWS_AS(make_instance({{0, 0}}), UsageError);
    CHECK_THROWS_AS(make_instance({}), UsageError);
    CHECK_THROWS_AS(make_instance({{1, 2}, {1}}), UsageError);
    CHECK_THROWS_AS(Weight(Rational(-1)), UsageError);
}

TEST_CASE("assignment validation") {
    const Instance inst = make_instance({{3, 0}, {2, 2}});
    CHECK_NOTHROW(validate(inst, Assignment{{0, 1}}));
    CHECK_THROWS_AS(validate(inst, Assignment{{1, 1}}), UsageError);  // job 0 unavailable on 1
    CHECK_THROWS_AS(validate(inst, Assignment{{0}}), UsageError);
    CHECK_THROWS_AS(validate(inst, Assignment{{0, 2}}), UsageError);
    CHECK(min_weight_assignment(inst).machine_of == std::vector<MachineIndex>{0, 0});
}

TEST_CASE("machine_load") {
    std::vector<std::vector<Weight>> rows = {{Weight(Rational(1)), Weight(Rational(1))},
                                             {Weight(Rational(2)), Weight(Rational(7, 2))}};
    const Instance inst(rows);
    CHECK(machine_load(inst, Assignment{{0, 0}}, 1) == 0);
    CHECK(machine_load(inst, Assignment{{0, 0}}, 0) == 3);
    CHECK(machine_load(inst, Assignment{{0, 1}}, 1) == Rational(7, 2));
    CHECK_THROWS_AS(machine_load(inst, Assignment{{0, 1}}, 2), UsageError);
}

TEST_CASE("p_norm and makespan") {
    CHECK(p_norm(LoadVector{{Rational(3), Rational(4)}}, 2) == "5");
    for (unsigned p = 1; p <= 6; ++p) CHECK(p_norm(LoadVector{{Rational(5), Rational(0), Rational(0)}}, p) == "5");
    CHECK(p_norm(LoadVector{{Rational(1), Rational(1), Rational(1), Rational(1)}}, 2) == "2");
    CHECK_THROWS_AS(p_norm(LoadVector{{Rational(1)}}, 0), UsageError);

    CHECK(makespan(LoadVector{{Rational(3), Rational(4)}}) == 4);
    CHECK(makespan(LoadVector{{Rational(0), Rational(0)}}) == 0);
    CHECK(makespan(LoadVector{{Rational(7, 2), Rational(7, 2)}}) == Rational(7, 2));
}

TEST_CASE("norm sandwich, Minkowski and convexity on random vectors") {
    Rng rng(2024);
    std::uniform_int_distribution<long> v(0, 30);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t m = 1 + static_cast<std::size_t>(trial % 6);
        LoadVector a, b, s;
        for (std::size_t j = 0; j < m; ++j) {
            const long x = v(rng);
            const long y = v(rng);
            a.loads.emplace_back(x);
            b.loads.emplace_back(y);
            s.loads.emplace_back(x + y);
        }
        for (unsigned p = 1; p <= 8; ++p) {
            const Rational mp = pow(makespan(a), p);
            const Rational np = p_norm_power(a, p);
            REQUIRE(mp <= np);
            REQUIRE(np <= Rational(static_cast<long>(m)) * mp);

            const Interval lhs = Interval(p_norm_power(s, p)).root(p);
            const Interval rhs = Interval(p_norm_power(a, p)).root(p) + Interval(p_norm_power(b, p)).root(p);
            REQUIRE_FALSE(lhs.certainly_gt(rhs));
        }
    }
    for (int trial = 0; trial < 500; ++trial) {
        const Rational t(v(rng));
        std::vector<Rational> extra;
        Rational total = 0;
        for (int i = 0; i < 1 + trial % 5; ++i) {
            extra.emplace_back(v(rng));
            total += extra.back();
        }
        for (unsigned r = 1; r <= 6; ++r) {
            Rational left = 0;
            for (const auto& x : extra) left += pow(t + x, r) - pow(t, r);
            REQUIRE(left <= pow(t + total, r) - pow(t, r));
        }
    }
}

TEST_CASE("generators are deterministic and respect their codomain") {
    const Instance a = generate_instance("uniform-integer", 2, 2, 1, GeneratorParams{1, 10});
    const Instance b = generate_instance("uniform-integer", 2, 2, 1, GeneratorParams{1, 10});
    CHECK(serialize_instance(a) == serialize_instance(b));
    for (JobIndex u = 0; u < 2; ++u)
        for (MachineIndex j = 0; j < 2; ++j) {
            CHECK(a.w(u, j) >= 1);
            CHECK(a.w(u, j) <= 10);
            CHECK(a.w(u, j).get_den() == 1);
        }

    const Instance tv = generate_instance("two-values", 3, 2, 5, GeneratorParams{1, 4});
    for (JobIndex u = 0; u < 3; ++u)
        for (MachineIndex j = 0; j < 2; ++j) CHECK((tv.w(u, j) == 1 || tv.w(u, j) == 4));

    GeneratorParams rr;
    rr.avail = 0.3;
    rr.factor_max = 3;
    const Instance r = generate_instance("restricted-related", 20, 4, 9, rr);
    bool saw_hole = false;
    for (JobIndex u = 0; u < 20; ++u) {
        CHECK_FALSE(r.strategies(u).empty());
        saw_hole = saw_hole || r.strategies(u).size() < 4;
    }
    CHECK(saw_hole);

    rr.strict = true;
    rr.avail = 0.01;
    CHECK_THROWS_AS(generate_instance("restricted-related", 50, 2, 3, rr), UsageError);
    CHECK_THROWS_AS(generate_instance("nope", 2, 2, 1), UsageError);
    CHECK_THROWS_AS(generate_instance("uniform-integer", 0, 2, 1), UsageError);
}

TEST_CASE("instance JSON parsing") {
    const Instance inst = parse_instance(R"({"format":"cml-1","n":2,"m":3,
        "weights":[[1,"2.5","7/2"],[null,4,"6/4"]]})");
    CHECK(inst.w(0, 1) == Rational(5, 2));
    CHECK(inst.w(0, 2) == Rational(7, 2));
    CHECK_FALSE(inst.available(1, 0));
    CHECK(inst.w(1, 2) == Rational(3, 2));
    CHECK(inst.min_weight(1) == Rational(3, 2));

    CHECK_NOTHROW(parse_instance(R"({"format":"cml-1","n":1,"m":2,"weights":[[2,3]],"min_weight":[2]})"));
    CHECK_THROWS_AS(parse_instance(R"({"format":"cml-1","n":1,"m":2,"weights":[[2,3]],"min_weight":[3]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"n":1,"m":1,"weights":[[1]]})"), ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"format":"cml-2","n":1,"m":1,"weights":[[1]]})"), ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"format":"cml-1","n":1,"m":2,"weights":[[null,null]]})"), ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"format":"cml-1","n":1,"m":2,"weights":[[1,0]]})"), ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"format":"cml-1","n":1,"m":2,"weights":[[1,1.5]]})"), ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"format":"cml-1","n":2,"m":1,"weights":[[1]]})"), ParseError);
    CHECK_THROWS_AS(parse_instance("not json"), ParseError);

    const Assignment asg = parse_assignment(R"({"format":"cml-1","machine_of":[0,2,1]})");
    CHECK(asg.machine_of == std::vector<MachineIndex>{0, 2, 1});
    CHECK(parse_assignment(serialize_assignment(asg)) == asg);
    CHECK_THROWS_AS(parse_assignment(R"({"format":"cml-1","machine_of":[-1]})"), ParseError);
}

TEST_CASE("serialize(parse(x)) is a fixed point over a generated corpus") {
    std::vector<std::string> corpus = {
        serialize_instance(parse_instance(R"({"format":"cml-1","n":2,"m":3,"weights":[[1,"2.5","7/2"],[null,4,"6/4"]]})"))};
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto& kind = generator_kinds()[seed % 3];
        corpus.push_back(serialize_instance(generate_instance(kind, 1 + seed % 7, 1 + seed % 5, seed)));
        corpus.push_back(serialize_instance(generate_instance(kind, 3, 2, seed).scaled(Rational(2, 3))));
    }
    for (const auto& text : corpus) {
        CHECK(serialize_instance(parse_instance(text)) == text);
        CHECK(instance_digest(parse_instance(text)) == instance_digest(parse_instance(text)));
    }
    CHECK(instance_digest(make_instance({{1, 2}})) != instance_digest(make_instance({{2, 1}})));
    CHECK(instance_digest(make_instance({{1, 2}})).size() == 64);
}
