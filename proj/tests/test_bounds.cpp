// Copyright 2026 The qwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"

#include "qwalk/bounds.hpp"
#include "qwalk/generators.hpp"
#include "qwalk/stationary.hpp"
#include "qwalk/walk.hpp"
#include "test_support.hpp"

using namespace qwalk;

namespace {

std::vector<Vertex> torus_block(std::size_t side) {
    return {torus_vertex(side, side, 1, 1), torus_vertex(side, side, 1, 2), torus_vertex(side, side, 2, 1),
            torus_vertex(side, side, 2, 2)};
}

std::vector<StationaryAssignment> min_norm_all(const Graph& g, const MarkedSet& marked) {
    std::vector<StationaryAssignment> out;
    for (const auto& comp : marked_components(g, marked)) out.push_back(solve_min_norm(comp));
    return out;
}

// Peak marked probability by repeated multiplication with the dense step matrix.
double dense_peak(const Graph& g, const std::vector<Vertex>& marked, std::size_t t_max) {
    const Eigen::MatrixXd u = testing::dense_shift(g) * testing::dense_coin(g) * testing::dense_query(g, marked);
    Eigen::VectorXd s = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(g.arc_count()),
                                                  1.0 / std::sqrt(double(g.arc_count())));
    double best = 0.0;
    for (std::size_t t = 0; t <= t_max; ++t) {
        double p = 0.0;
        for (Vertex w : marked) {
            for (std::size_t c = 0; c < g.degree(w); ++c) p += s(g.arc(w, c)) * s(g.arc(w, c));
        }
        best = std::max(best, p);
        s = u * s;
    }
    return best;
}

} // namespace

TEST_CASE("component_bound values") {
    SUBCASE("2x2 block on the 16x16 lattice, min-norm coefficients") {
        // c = -1 on 4 edges: sum over ordered pairs 8, D = 8, |E| = 4 -> 32 / (2m)
        const Graph g = torus2d(16, 16);
        const auto comp = marked_components(g, MarkedSet(g, torus_block(16))).front();
        CHECK(component_bound(comp, solve_min_norm(comp), g.edge_count()) == doctest::Approx(0.125).epsilon(1e-14));
    }
    SUBCASE("same block with the vertically weighted coefficients") {
        // c^2 sums to 2 (9 + 9 + 1 + 1) = 40 over ordered pairs -> 64 / (2m)
        const Graph g = torus2d(16, 16);
        const auto comp = marked_components(g, MarkedSet(g, torus_block(16))).front();
        const Vertex tl = torus_vertex(16, 16, 1, 1), tr = torus_vertex(16, 16, 1, 2);
        const Vertex bl = torus_vertex(16, 16, 2, 1), br = torus_vertex(16, 16, 2, 2);
        const std::vector<EdgeCoefficient> coeffs{{{tl, bl}, -3.0}, {{tr, br}, -3.0}, {{tl, tr}, 1.0}, {{bl, br}, 1.0}};
        const auto asg = inject_assignment(comp, coeffs);
        CHECK(component_bound(comp, asg, g.edge_count()) == doctest::Approx(0.25).epsilon(1e-14));
    }
    SUBCASE("adjacent pair in a d-regular graph: 4 d^2 / m") {
        for (std::size_t d : {3, 4, 5}) {
            const Graph g = random_regular(24, d, 11 * d);
            const Edge e = g.edges()[3];
            const auto comp = marked_components(g, MarkedSet(g, {e.u, e.v})).front();
            const double expected = 4.0 * double(d * d) / double(g.edge_count());
            CHECK(component_bound(comp, solve_min_norm(comp), g.edge_count()) ==
                  doctest::Approx(expected).epsilon(1e-13));
        }
    }
    SUBCASE("mismatched component") {
        const Graph g = cycle(9);
        const auto comps = marked_components(g, MarkedSet(g, {1, 2, 5, 6}));
        CHECK_THROWS_AS(component_bound(comps[0], solve_min_norm(comps[1]), 9), std::invalid_argument);
    }
}

TEST_CASE("total_bound sums the components") {
    const Graph g = torus2d(16, 16);
    // three horizontal pairs far apart: each contributes 4 * 16 / 512
    const MarkedSet three(g, {0, 1, 40, 41, 136, 137});
    const auto asgs = min_norm_all(g, three);
    REQUIRE(asgs.size() == 3);
    const auto report = total_bound(asgs, g.edge_count());
    CHECK(report.total_bound == doctest::Approx(0.375).epsilon(1e-14));
    REQUIRE(report.per_component.size() == 3);
    for (const auto& t : report.per_component) {
        CHECK(t.term == doctest::Approx(0.125).epsilon(1e-14));
        CHECK(t.total_out == 6);
        CHECK(t.internal_edges == 1);
        CHECK(t.sum_directed_c2 == doctest::Approx(18.0).epsilon(1e-13));
    }
    CHECK(report.assignment_source == AssignmentSource::min_norm);

    CHECK(total_bound(std::vector<StationaryAssignment>{}, g.edge_count()).total_bound == 0.0);
    const std::vector<StationaryAssignment> twice{asgs[0], asgs[0]};
    CHECK_THROWS_WITH_AS(total_bound(twice, g.edge_count()), doctest::Contains("overlap"), std::invalid_argument);
    CHECK_THROWS_AS(total_bound(asgs, 0), std::invalid_argument);
}

TEST_CASE("write_bound_report") {
    const Graph g = cycle(5);
    const auto asgs = min_norm_all(g, MarkedSet(g, {3, 4}));
    std::ostringstream out;
    write_bound_report(out, total_bound(asgs, g.edge_count()));
    std::istringstream lines(out.str());
    std::string line;
    std::vector<std::string> all;
    while (std::getline(lines, line)) all.push_back(line);
    REQUIRE(all.size() == 10);
    CHECK(all[0] == "m = 5");
    CHECK(all[1] == "assignment_source = min_norm");
    REQUIRE(all[2].rfind("total_bound = ", 0) == 0);
    // (2/5) * (2 + 2*2 + 2*1)
    CHECK(std::stod(all[2].substr(14)) == doctest::Approx(3.2).epsilon(1e-14));
    CHECK(all[3].empty());
    CHECK(all[4] == "[component 0]");
    CHECK(all[7] == "total_out = 2");
    CHECK(all[8] == "internal_edges = 1");
}

TEST_CASE("lemma_argmax examples") {
    const std::vector<double> a1{1.0, 0.0};
    const auto x1 = lemma_argmax(a1, 2.0);
    CHECK(x1[0] == doctest::Approx(-2.0));
    CHECK(x1[1] == doctest::Approx(0.0));
    CHECK(sphere_objective(x1, a1) == doctest::Approx(9.0));

    const std::vector<double> a2{3.0, 4.0};
    const auto x2 = lemma_argmax(a2, 5.0);
    CHECK(x2[0] == doctest::Approx(-3.0));
    CHECK(x2[1] == doctest::Approx(-4.0));
    CHECK(sphere_objective(x2, a2) == doctest::Approx(100.0));

    const auto x0 = lemma_argmax(a2, 0.0);
    CHECK(x0 == std::vector<double>{0.0, 0.0});
    CHECK(sphere_objective(x0, a2) == doctest::Approx(25.0));

    const std::vector<double> zero{0.0, 0.0, 0.0};
    CHECK_THROWS_WITH_AS(lemma_argmax(zero, 1.0), doctest::Contains("zero center"), std::invalid_argument);
    CHECK_THROWS_AS(lemma_argmax(a2, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(sphere_objective(a1, zero), std::invalid_argument);
}

TEST_CASE("lemma_brute_force") {
    const std::vector<double> a{3.0, 4.0};
    const auto found = lemma_brute_force(a, 5.0, 2000, 1);
    CHECK(found.f == doctest::Approx(100.0).epsilon(1e-6));
    CHECK(found.f <= 100.0 + 1e-9);

    const std::vector<double> line{-0.5};
    const auto one = lemma_brute_force(line, 2.0, 1, 3);
    CHECK(one.x == std::vector<double>{2.0});
    CHECK(one.f == doctest::Approx(6.25));

    const auto again = lemma_brute_force(a, 5.0, 2000, 1);
    CHECK(again.x == found.x);
    CHECK_THROWS_AS(lemma_brute_force(std::vector<double>(9, 1.0), 1.0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(lemma_brute_force(a, 1.0, 0, 1), std::invalid_argument);
}

TEST_CASE("property: closed-form maximizer matches the sampled search") {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> radius(0.1, 4.0);
    std::uniform_real_distribution<double> scale(0.1, 3.0);
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t dim = 2 + trial % 5;
        auto a = testing::random_unit_vector(dim, rng);
        const double s = scale(rng);
        for (double& v : a) v *= s;
        const double r = radius(rng);
        const auto x = lemma_argmax(a, r);
        const double closed = sphere_objective(x, a);
        CHECK(closed == doctest::Approx((r + s) * (r + s)).epsilon(1e-12));
        const auto brute = lemma_brute_force(a, r, 4000, 100 + trial);
        CHECK(brute.f <= closed * (1.0 + 1e-12));
        CHECK(brute.f >= closed * (1.0 - 1e-4));
    }
}

TEST_CASE("property: bound bookkeeping identities") {
    std::mt19937_64 rng(99);
    int checked = 0;
    for (int host = 0; host < 20; ++host) {
        const Graph g = testing::random_graph(14, 0.3, rng);
        if (g.edge_count() == 0) continue;
        const auto subsets = testing::connected_subsets(g, 5);
        for (int pick = 0; pick < 10; ++pick) {
            const auto& subset = subsets[rng() % subsets.size()];
            const auto comp = marked_components(g, MarkedSet(g, subset)).front();
            if (!exists_stationary(comp)) continue;
            const auto asg = solve_min_norm(comp);
            const double a0sq = 1.0 / (2.0 * double(g.edge_count()));
            const auto split = split_bound(asg, g.edge_count());
            const double bound = component_bound(comp, asg, g.edge_count());
            // the remainder norm is exactly the bracket of the bound
            CHECK(4.0 * a0sq * split.remainder == doctest::Approx(bound).epsilon(1e-12));
            CHECK(split.stationary_marked <= split.remainder + 1e-12);
            CHECK(split.sharp_bound <= bound + 1e-15);
            ++checked;
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("property: any other valid assignment gives a looser bound") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss;
    int checked = 0;
    for (int host = 0; host < 200 && checked < 30; ++host) {
        const Graph g = testing::random_graph(12, 0.45, rng);
        const auto subsets = testing::connected_subsets(g, 6);
        const auto& subset = subsets[rng() % subsets.size()];
        const auto comp = marked_components(g, MarkedSet(g, subset)).front();
        if (!exists_stationary(comp)) continue;
        const Eigen::MatrixXd b = incidence_matrix(comp);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeFullV);
        const Eigen::Index nullity = b.cols() - svd.rank();
        if (nullity == 0) continue;
        const Eigen::VectorXd delta = svd.matrixV().rightCols(nullity) * Eigen::VectorXd::NullaryExpr(nullity, [&] {
            return gauss(rng);
        });
        const auto best = solve_min_norm(comp);
        auto coeffs = best.coefficients;
        for (Eigen::Index k = 0; k < delta.size(); ++k) coeffs[std::size_t(k)].c += 0.5 * delta(k);
        const auto other = inject_assignment(comp, coeffs);
        CHECK(component_bound(comp, other, g.edge_count()) > component_bound(comp, best, g.edge_count()));
        ++checked;
    }
    CHECK(checked >= 10);
}

TEST_CASE("max_marked_probability_oracle agrees with dense powers") {
    const Graph t = torus2d(4, 4);
    const auto peak = max_marked_probability_oracle(t, MarkedSet(t, {5}), 60);
    CHECK(peak.p0 == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
    CHECK(peak.max_p == doctest::Approx(dense_peak(t, {5}, 60)).epsilon(1e-12));
    CHECK(peak.argmax_t <= 60);

    const Graph c = cycle(7);
    const auto cp = max_marked_probability_oracle(c, MarkedSet(c, {0, 1}), 100);
    CHECK(cp.max_p == doctest::Approx(dense_peak(c, {0, 1}, 100)).epsilon(1e-12));

    const auto none = max_marked_probability_oracle(c, MarkedSet(c, std::vector<Vertex>{}), 5);
    CHECK(none.max_p == 0.0);
    CHECK(none.argmax_t == 0);
}

TEST_CASE("default_t_max") {
    CHECK(default_t_max(cycle(9)) == 160);
    CHECK(default_t_max(torus2d(16, 16)) == 2560);
    CHECK(default_t_max(torus2d(64, 64)) == 10000);
}

TEST_CASE("property: simulated peaks stay below the bound") {
    SUBCASE("2x2 lattice blocks") {
        for (std::size_t side : {8, 16}) {
            const Graph g = torus2d(side, side);
            const MarkedSet marked(g, torus_block(side));
            const double bound = total_bound(min_norm_all(g, marked), g.edge_count()).total_bound;
            CHECK(bound == doctest::Approx(32.0 / double(side * side)).epsilon(1e-13));
            CHECK(max_marked_probability_oracle(g, marked, 5000).max_p <= bound + 1e-9);
        }
    }
    SUBCASE("random regular hosts with small feasible components") {
        std::mt19937_64 rng(31337);
        int runs = 0;
        for (int trial = 0; trial < 24; ++trial) {
            const std::size_t d = 3 + trial % 3;
            const std::size_t n = 2 * (15 + rng() % 30);
            const Graph g = random_regular(n, d, rng());
            const auto subsets = testing::connected_subsets(g, 4);
            std::vector<Vertex> chosen;
            for (int tries = 0; tries < 50 && chosen.empty(); ++tries) {
                const auto& s = subsets[rng() % subsets.size()];
                if (s.size() >= 2 && exists_stationary(marked_components(g, MarkedSet(g, s)).front())) chosen = s;
            }
            if (chosen.empty()) continue;
            const MarkedSet marked(g, chosen);
            const auto report = total_bound(min_norm_all(g, marked), g.edge_count());
            CHECK(max_marked_probability_oracle(g, marked, 2000).max_p <= report.total_bound + 1e-9);
            ++runs;
        }
        CHECK(runs >= 20);
    }
}
