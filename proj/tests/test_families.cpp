#include <catch_amalgamated.hpp>
#include <cmath>

#include "helpers.hpp"
#include "rzf/estimate.hpp"
#include "rzf/exact.hpp"
#include "rzf/families.hpp"
#include "rzf/process.hpp"

using namespace rzf;

namespace {

void expect_oracle_agreement(const FamilySpec& spec, const std::string& what) {
    const GeneratedGraph gen = generate(spec);
    REQUIRE(gen.oracle.kind == OracleKind::exact);
    const EptValue dp = exact_ept(gen.graph, gen.start);
    INFO(what << ": dp=" << dp.value << " oracle=" << gen.oracle.value);
    REQUIRE(dp.is_finite());
    CHECK(dp.value == Catch::Approx(gen.oracle.value).margin(1e-9));
}

}  // namespace

TEST_CASE("generators agree with their closed forms up to order 14") {
    SplitMix64 rng(111);

    SECTION("unidirectional and bidirected paths") {
        for (int n = 1; n <= 14; ++n) {
            FamilySpec s;
            s.kind = FamilyKind::unipath;
            s.n = n;
            expect_oracle_agreement(s, "unipath n=" + std::to_string(n));
        }
        for (int n = 2; n <= 13; ++n) {
            FamilySpec s;
            s.kind = FamilyKind::bipath;
            s.n = n;
            expect_oracle_agreement(s, "bipath n=" + std::to_string(n));
        }
        for (int trial = 0; trial < 6; ++trial) {
            FamilySpec s;
            s.kind = FamilyKind::bipath;
            s.n = 4 + static_cast<int>(rng.next() % 6);
            for (int i = 0; i + 1 < s.n; ++i) {
                s.fwd.push_back(0.2 + 3.0 * rng.uniform());
                s.bwd.push_back(0.2 + 3.0 * rng.uniform());
            }
            expect_oracle_agreement(s, "weighted bipath");
        }
    }
    SECTION("cycles, arbitrary weights") {
        for (int n : {3, 6, 11, 14}) {
            FamilySpec s;
            s.kind = FamilyKind::bicycle;
            s.n = n;
            s.k = 1 + static_cast<int>(rng.next() % 3);
            s.p = 0.1 + 2.0 * rng.uniform();
            s.q = 0.1 + 2.0 * rng.uniform();
            expect_oracle_agreement(s, "bicycle n=" + std::to_string(n));
        }
        FamilySpec s;
        s.kind = FamilyKind::unicycle;
        s.n = 13;
        expect_oracle_agreement(s, "unicycle n=13");
    }
    SECTION("stars") {
        for (int m : {1, 2, 7, 13}) {
            FamilySpec s;
            s.kind = FamilyKind::star;
            s.m = m;
            expect_oracle_agreement(s, "star m=" + std::to_string(m));
        }
        for (int trial = 0; trial < 6; ++trial) {
            FamilySpec s;
            s.kind = FamilyKind::weighted_star;
            const int m = 2 + static_cast<int>(rng.next() % 8);
            for (int i = 0; i < m; ++i) {
                s.leaf_in.push_back(0.2 + 4.0 * rng.uniform());
                s.leaf_out.push_back(0.2 + 4.0 * rng.uniform());
            }
            s.start_leaf = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(m));
            expect_oracle_agreement(s, "weighted star");
        }
    }
    SECTION("suns up to 7 cycle vertices") {
        for (int n = 3; n <= 7; ++n) {
            FamilySpec s;
            s.kind = FamilyKind::sun;
            s.n = n;
            expect_oracle_agreement(s, "sun n=" + std::to_string(n));
        }
    }
    SECTION("arborescences and unidirectional trees") {
        for (int trial = 0; trial < 6; ++trial) {
            FamilySpec s;
            s.kind = FamilyKind::arborescence;
            s.n = 2 + static_cast<int>(rng.next() % 13);
            s.seed = rng.next();
            expect_oracle_agreement(s, "arborescence");
        }
        FamilySpec s;
        s.kind = FamilyKind::kary_tree_uni;
        s.k = 3;
        s.n = 2;  // 13 vertices
        expect_oracle_agreement(s, "kary_tree_uni");
    }
    SECTION("extremal constructions") {
        for (int m : {1, 2, 4, 6}) {
            FamilySpec s;
            s.kind = FamilyKind::quad_construction;
            s.m = m;
            expect_oracle_agreement(s, "quad m=" + std::to_string(m));
        }
        for (int d = 1; d <= 4; ++d)
            for (int n : {d + 1, 9, 14}) {
                FamilySpec s;
                s.kind = FamilyKind::maxdeg_construction;
                s.n = n;
                s.d = d;
                expect_oracle_agreement(s, "maxdeg n=" + std::to_string(n) +
                                               " d=" + std::to_string(d));
            }
        for (double w : {0.1, 0.5, 1.0})
            for (int n : {2, 5, 14}) {
                FamilySpec s;
                s.kind = FamilyKind::weight_construction;
                s.n = n;
                s.w = w;
                expect_oracle_agreement(s, "weight_construction");
            }
        {
            FamilySpec s;
            s.kind = FamilyKind::edge_join_sharp;
            s.m = 2;
            s.n = 3;
            s.d = 1;
            expect_oracle_agreement(s, "edge_join_sharp unweighted");
            s.weighted = true;
            s.d = 2;
            s.w = 0.5;
            expect_oracle_agreement(s, "edge_join_sharp weighted");
        }
    }
    SECTION("complete graphs via the chain oracle") {
        for (int n : {2, 5, 9}) {
            FamilySpec s;
            s.kind = FamilyKind::complete;
            s.n = n;
            expect_oracle_agreement(s, "complete n=" + std::to_string(n));
        }
    }
}

TEST_CASE("named generator examples") {
    SECTION("unipath of 6 vertices has value 5 from the source") {
        FamilySpec s;
        s.kind = FamilyKind::unipath;
        s.n = 6;
        CHECK(generate(s).oracle.value == 5.0);
    }
    SECTION("quad construction m=3 gives 12") {
        FamilySpec s;
        s.kind = FamilyKind::quad_construction;
        s.m = 3;
        const GeneratedGraph gen = generate(s);
        CHECK(gen.oracle.value == 12.0);
        CHECK(gen.graph.order() == 7);
        CHECK(is_finite_ept(gen.graph, gen.start));           // from b_1
        CHECK_FALSE(is_finite_ept(gen.graph, BlueSet::of(7, {4})));  // from a_1
    }
    SECTION("fort weighting pushes the expected time past the target") {
        for (double target : {10.0, 100.0}) {
            FamilySpec s;
            s.kind = FamilyKind::fort_weighting;
            s.fort_target = target;
            const GeneratedGraph gen = generate(s);
            const EptValue dp = exact_ept(gen.graph, gen.start);
            REQUIRE(dp.is_finite());
            CHECK(dp.value > target);
        }
    }
    SECTION("sun n=4 equals 5.5") {
        FamilySpec s;
        s.kind = FamilyKind::sun;
        s.n = 4;
        CHECK(generate(s).oracle.value == 5.5);
    }
    SECTION("bicycle n=7 with a 2-arc start gives 5") {
        FamilySpec s;
        s.kind = FamilyKind::bicycle;
        s.n = 7;
        s.k = 2;
        CHECK(generate(s).oracle.value == 5.0);
    }
    SECTION("join_paths value lies inside its band") {
        FamilySpec s;
        s.kind = FamilyKind::join_paths;
        s.lengths = {3, 3};
        const GeneratedGraph gen = generate(s);
        const EptValue dp = exact_ept(gen.graph, gen.start);
        CHECK(dp.value >= gen.oracle.low);
        CHECK(dp.value <= gen.oracle.high);
    }
    SECTION("spider with two legs is the path started in the middle") {
        FamilySpec s;
        s.kind = FamilyKind::spider;
        s.k = 2;
        s.n = 3;
        const GeneratedGraph spider = generate(s);
        FamilySpec p;
        p.kind = FamilyKind::bipath;
        p.n = 7;
        const WeightedDigraph path = generate(p).graph;
        CHECK(exact_ept(spider.graph, spider.start).value ==
              Catch::Approx(exact_ept(path, BlueSet::of(7, {3})).value).margin(1e-9));
    }
}

TEST_CASE("deterministic families absorb at the oracle round every run") {
    FamilySpec arb;
    arb.kind = FamilyKind::arborescence;
    arb.n = 10;
    arb.seed = 5;
    FamilySpec tree;
    tree.kind = FamilyKind::kary_tree_uni;
    tree.k = 3;
    tree.n = 2;
    for (const FamilySpec& spec : {arb, tree}) {
        const GeneratedGraph gen = generate(spec);
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            const Trajectory traj = run_to_absorption(gen.graph, gen.start, seed);
            REQUIRE(traj.absorbed);
            REQUIRE(traj.rounds == static_cast<std::uint64_t>(gen.oracle.value));
        }
    }
}

TEST_CASE("best single leaf start is the heaviest leaf") {
    SplitMix64 rng(9090);
    for (int trial = 0; trial < 10; ++trial) {
        const int m = 2 + static_cast<int>(rng.next() % 7);
        std::vector<double> weights;
        for (int i = 0; i < m; ++i) weights.push_back(0.25 + 4.0 * rng.uniform());
        int heaviest = 0;
        for (int i = 1; i < m; ++i)
            if (weights[i] > weights[heaviest]) heaviest = i;
        double best = 1e300;
        int best_leaf = -1;
        for (int leaf = 1; leaf <= m; ++leaf) {
            FamilySpec s;
            s.kind = FamilyKind::weighted_star;
            s.leaf_in = weights;
            s.start_leaf = leaf;
            const GeneratedGraph gen = generate(s);
            const double value = exact_ept(gen.graph, gen.start).value;
            if (value < best) {
                best = value;
                best_leaf = leaf - 1;
            }
        }
        CHECK(best_leaf == heaviest);
    }
}

TEST_CASE("bidirected k-ary trees respect the layered bound") {
    for (int k = 1; k <= 3; ++k)
        for (int depth = 1; depth <= 2; ++depth) {
            FamilySpec s;
            s.kind = FamilyKind::kary_tree_bi;
            s.k = k;
            s.n = depth;
            const GeneratedGraph gen = generate(s);
            if (gen.graph.order() > kDefaultDpLimit) continue;
            REQUIRE(gen.oracle.kind == OracleKind::upper_bound);
            const EptValue dp = exact_ept(gen.graph, gen.start);
            CHECK(dp.value <= gen.oracle.value + 1e-9);
        }
    SECTION("larger instance via the Monte Carlo upper confidence") {
        FamilySpec s;
        s.kind = FamilyKind::kary_tree_bi;
        s.k = 2;
        s.n = 4;  // 31 vertices
        const GeneratedGraph gen = generate(s);
        const McEstimate est = mc_ept(gen.graph, gen.start, 4000, 31);
        CHECK(est.mean + 4.0 * est.stderror <= gen.oracle.value);
    }
}

TEST_CASE("complete_graph_chain_ept") {
    CHECK(complete_graph_chain_ept(2).value == Catch::Approx(1.0).margin(1e-12));
    CHECK_THROWS_AS(complete_graph_chain_ept(1), std::invalid_argument);
    for (int n : {3, 10}) {
        FamilySpec s;
        s.kind = FamilyKind::complete;
        s.n = n;
        const GeneratedGraph kn = generate(s);
        CHECK(complete_graph_chain_ept(n).value ==
              Catch::Approx(exact_ept(kn.graph, kn.start).value).margin(1e-9));
    }
}

TEST_CASE("max_geometric_expectation_bounds") {
    SECTION("n=1, p=1/2 brackets the geometric mean 2") {
        const auto [low, high] = max_geometric_expectation_bounds(1, 0.5);
        CHECK(low == Catch::Approx(1.0 / std::log(2.0)).margin(1e-12));
        CHECK(high == Catch::Approx(1.0 + 1.0 / std::log(2.0)).margin(1e-12));
        CHECK(low <= 2.0);
        CHECK(2.0 <= high);
    }
    SECTION("empirical max of two geometrics lands inside") {
        const auto [low, high] = max_geometric_expectation_bounds(2, 0.5);
        SplitMix64 rng(55);
        double sum = 0.0;
        const int reps = 1000000;
        for (int r = 0; r < reps; ++r)
            sum += static_cast<double>(
                std::max(sample_geometric(rng, 0.5), sample_geometric(rng, 0.5)));
        const double mean = sum / reps;
        CHECK(low <= mean);
        CHECK(mean <= high);
    }
    SECTION("interval width is exactly 1") {
        const auto [low, high] = max_geometric_expectation_bounds(17, 0.123);
        CHECK(high - low == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("input checks") {
        CHECK_THROWS_AS(max_geometric_expectation_bounds(0, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(max_geometric_expectation_bounds(3, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(max_geometric_expectation_bounds(3, 1.0), std::invalid_argument);
    }
}

TEST_CASE("bipartite start-vertex probe") {
    struct Row {
        int a, b;
        double u, v;
    };
    const Row rows[] = {
        {4, 3, 4.682545, 4.059473},
        {7, 2, 6.662118, 3.367973},
        {2, 1, 3.000000, 1.000000},
    };
    for (const Row& row : rows) {
        const BipartiteProbe probe = bipartite_conjecture_probe(row.a, row.b);
        CHECK(probe.ept_u.value == Catch::Approx(row.u).margin(1e-5));
        CHECK(probe.ept_v.value == Catch::Approx(row.v).margin(1e-5));
        CHECK(probe.conjecture_holds);
    }
    CHECK_THROWS_AS(bipartite_conjecture_probe(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(bipartite_conjecture_probe(2, 5), std::invalid_argument);
}

TEST_CASE("generator hypothesis checks") {
    FamilySpec sun;
    sun.kind = FamilyKind::sun;
    sun.n = 2;
    CHECK_THROWS_AS(generate(sun), std::invalid_argument);

    FamilySpec cyc;
    cyc.kind = FamilyKind::bicycle;
    cyc.n = 5;
    cyc.p = 0.0;
    CHECK_THROWS_AS(generate(cyc), std::invalid_argument);

    FamilySpec star;
    star.kind = FamilyKind::weighted_star;
    star.leaf_in = {1.0, 2.0};
    star.start_leaf = 3;
    CHECK_THROWS_AS(generate(star), std::invalid_argument);

    FamilySpec wc;
    wc.kind = FamilyKind::weight_construction;
    wc.n = 5;
    wc.w = 1.5;
    CHECK_THROWS_AS(generate(wc), std::invalid_argument);
}

TEST_CASE("oracle_ept roles") {
    FamilySpec star;
    star.kind = FamilyKind::star;
    star.m = 6;
    CHECK(oracle_ept(star, StartRole::center).value == 1.0);
    CHECK(oracle_ept(star, StartRole::leaf).value == 7.0);

    FamilySpec ws;
    ws.kind = FamilyKind::weighted_star;
    ws.leaf_in = {1.0, 2.0, 3.0};
    ws.start_leaf = 3;
    CHECK(oracle_ept(ws).value == Catch::Approx(3.0).margin(1e-12));
    CHECK(weighted_star_set_ept({1.0, 2.0, 3.0}, {1, 3}).value ==
          Catch::Approx(1.0 + 6.0 / 4.0).margin(1e-12));

    FamilySpec path;
    path.kind = FamilyKind::bipath;
    path.n = 4;
    path.fwd = {2.0, 3.0, 1.0};
    path.bwd = {1.0, 1.0, 1.0};
    CHECK(oracle_ept(path, StartRole::left_end).value ==
          Catch::Approx(3.0 / 2.0 + 4.0 / 3.0 + 1.0).margin(1e-12));
    CHECK(oracle_ept(path, StartRole::right_end).value ==
          Catch::Approx(3.0 / 1.0 + 4.0 / 1.0 + 1.0).margin(1e-12));

    FamilySpec kab;
    kab.kind = FamilyKind::complete_bipartite;
    kab.side_a = 3;
    kab.side_b = 2;
    CHECK_THROWS_AS(oracle_ept(kab), std::invalid_argument);
}

TEST_CASE("family specs parse from flat key=value text") {
    const FamilySpec cyc = parse_family_kv("kind=bicycle n=7 k=2 p=1.5 q=0.5");
    CHECK(cyc.kind == FamilyKind::bicycle);
    CHECK(cyc.n == 7);
    CHECK(cyc.k == 2);
    CHECK(cyc.p == 1.5);

    const FamilySpec star = parse_family_kv("kind=weighted_star a=1,2,3 start_leaf=3");
    CHECK(star.leaf_in == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(star.start_leaf == 3);

    const FamilySpec kab = parse_family_kv("kind=complete_bipartite a=4 b=3");
    CHECK(kab.side_a == 4);
    CHECK(kab.side_b == 3);

    const FamilySpec join = parse_family_kv("kind=join_paths lengths=5,7");
    CHECK(join.lengths == std::vector<int>{5, 7});

    CHECK_THROWS_AS(parse_family_kv("n=5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_family_kv("kind=bicycle banana=1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_family_kv("kind=nonesuch"), std::invalid_argument);
}
