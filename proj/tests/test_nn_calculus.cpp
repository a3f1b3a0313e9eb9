#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "cheb2relu/nn.hpp"
#include "cheb2relu/nn_calculus.hpp"
#include "support/oracles.hpp"

using namespace cheb2relu;

namespace {

NeuralNetwork random_net(std::mt19937& gen, int input_dim, int output_dim, int depth,
                         int width = 5) {
    std::uniform_real_distribution<double> w(-1.5, 1.5);
    std::bernoulli_distribution keep(0.6);
    std::vector<Layer> layers;
    int prev = input_dim;
    for (int l = 0; l < depth; ++l) {
        const int rows = l + 1 == depth ? output_dim : width;
        std::vector<Triplet> trips;
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < prev; ++c)
                if (keep(gen))
                    trips.push_back({r, c, w(gen)});
        std::vector<double> bias(rows);
        for (double& b : bias)
            b = keep(gen) ? w(gen) : 0.0;
        layers.emplace_back(rows, prev, std::move(trips), std::move(bias));
        prev = rows;
    }
    return NeuralNetwork(input_dim, std::move(layers));
}

std::vector<double> random_input(std::mt19937& gen, int dim) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x(dim);
    for (double& v : x)
        v = u(gen);
    return x;
}

} // namespace

TEST_CASE("parallel of identities duplicates the input") {
    NeuralNetwork p = parallel(identity_net(1, 2), identity_net(1, 2));
    const auto y = p.realize({0.4});
    CHECK(y.size() == 2);
    CHECK(y[0] == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(y[1] == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("parallel sizes are exactly additive") {
    std::mt19937 gen = oracles::rng(11);
    for (int rep = 0; rep < 5; ++rep) {
        NeuralNetwork a = random_net(gen, 2, 3, 3);
        NeuralNetwork b = random_net(gen, 2, 1, 3);
        const SizeMetrics ma = a.metrics(), mb = b.metrics();
        const SizeMetrics mp = parallel(a, b).metrics();
        CHECK(mp.size == ma.size + mb.size);
        CHECK(mp.size_first == ma.size_first + mb.size_first);
        CHECK(mp.size_last == ma.size_last + mb.size_last);
        CHECK(mp.depth == ma.depth);
    }
}

TEST_CASE("n-ary parallel fold matches separate realizations") {
    std::mt19937 gen = oracles::rng(12);
    NeuralNetwork a = random_net(gen, 1, 2, 2);
    NeuralNetwork b = random_net(gen, 1, 1, 2);
    NeuralNetwork c = random_net(gen, 1, 3, 2);
    NeuralNetwork p = parallel({a, b, c});
    CHECK(p.output_dim() == 6);
    for (int i = 0; i < 30; ++i) {
        const auto x = random_input(gen, 1);
        const auto y = p.realize(x);
        const auto ya = a.realize(x), yb = b.realize(x), yc = c.realize(x);
        CHECK(y[0] == doctest::Approx(ya[0]).epsilon(1e-12));
        CHECK(y[1] == doctest::Approx(ya[1]).epsilon(1e-12));
        CHECK(y[2] == doctest::Approx(yb[0]).epsilon(1e-12));
        for (int j = 0; j < 3; ++j)
            CHECK(y[3 + j] == doctest::Approx(yc[j]).epsilon(1e-12));
    }
}

TEST_CASE("parallel rejects mismatched nets") {
    std::mt19937 gen = oracles::rng(13);
    NeuralNetwork a = random_net(gen, 2, 1, 3);
    CHECK_THROWS_AS(parallel(a, random_net(gen, 3, 1, 3)), StructuralError);
    CHECK_THROWS_AS(parallel(a, random_net(gen, 2, 1, 2)), StructuralError);
    CHECK_THROWS_AS(full_parallel(a, random_net(gen, 2, 1, 4)), StructuralError);
}

TEST_CASE("full parallel splits its input") {
    NeuralNetwork fp = full_parallel(identity_net(1, 2), identity_net(1, 2));
    const auto y = fp.realize({0.1, -0.2});
    CHECK(y[0] == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(y[1] == doctest::Approx(-0.2).epsilon(1e-15));
}

TEST_CASE("full parallel equals componentwise separate evaluation") {
    std::mt19937 gen = oracles::rng(14);
    NeuralNetwork a = random_net(gen, 2, 2, 3);
    NeuralNetwork b = random_net(gen, 1, 1, 3);
    NeuralNetwork fp = full_parallel(a, b);
    const SizeMetrics m = fp.metrics();
    CHECK(m.size == a.metrics().size + b.metrics().size);
    for (int i = 0; i < 50; ++i) {
        const auto xa = random_input(gen, 2);
        const auto xb = random_input(gen, 1);
        std::vector<double> x = {xa[0], xa[1], xb[0]};
        const auto y = fp.realize(x);
        const auto ya = a.realize(xa), yb = b.realize(xb);
        CHECK(std::abs(y[0] - ya[0]) <= 1e-12);
        CHECK(std::abs(y[1] - ya[1]) <= 1e-12);
        CHECK(std::abs(y[2] - yb[0]) <= 1e-12);
    }
}

TEST_CASE("concat of affine layers is the matrix product") {
    NeuralNetwork f = affine_network(Layer(1, 1, {{0, 0, 2.0}}, {1.0}));
    NeuralNetwork g = affine_network(Layer(1, 1, {{0, 0, 3.0}}, {0.0}));
    NeuralNetwork fg = concat(f, g);
    CHECK(fg.depth() == 1);
    CHECK(fg.layers()[0].triplets().size() == 1);
    CHECK(fg.layers()[0].triplets()[0].value == doctest::Approx(6.0));
    CHECK(fg.layers()[0].bias()[0] == doctest::Approx(1.0));
}

TEST_CASE("concat depth identity L1+L2-1") {
    std::mt19937 gen = oracles::rng(15);
    NeuralNetwork a = random_net(gen, 2, 1, 3);
    NeuralNetwork b = random_net(gen, 1, 2, 4);
    CHECK(concat(a, b).depth() == 3 + 4 - 1);
}

TEST_CASE("concat realizes the composition") {
    std::mt19937 gen = oracles::rng(16);
    NeuralNetwork a = random_net(gen, 2, 1, 3);
    NeuralNetwork b = random_net(gen, 1, 2, 4);
    NeuralNetwork ab = concat(a, b);
    for (int i = 0; i < 100; ++i) {
        const auto x = random_input(gen, 1);
        const double want = a.realize(b.realize(x))[0];
        CHECK(std::abs(ab.realize(x)[0] - want) <= 1e-12 * std::max(1.0, std::abs(want)));
    }
    CHECK_THROWS_AS(concat(b, b), StructuralError);
}

TEST_CASE("sparse concat of identities stays the identity") {
    NeuralNetwork s = sparse_concat(identity_net(1, 1), identity_net(1, 1));
    CHECK(s.depth() == 2);
    CHECK(s.realize({-2.5})[0] == doctest::Approx(-2.5).epsilon(1e-15));
    CHECK(s.realize({1.5})[0] == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("sparse concat matches plain concat and its size bound") {
    std::mt19937 gen = oracles::rng(17);
    for (int rep = 0; rep < 5; ++rep) {
        NeuralNetwork a = random_net(gen, 2, 1, 3);
        NeuralNetwork b = random_net(gen, 1, 2, 3);
        NeuralNetwork sc = sparse_concat(a, b);
        NeuralNetwork pc = concat(a, b);
        CHECK(sc.depth() == a.depth() + b.depth());
        const SizeMetrics ma = a.metrics(), mb = b.metrics(), ms = sc.metrics();
        CHECK(ms.size <= ma.size + ma.size_first + mb.size_last + mb.size);
        CHECK(ms.size <= 2 * ma.size + 2 * mb.size);
        for (int i = 0; i < 100; ++i) {
            const auto x = random_input(gen, 1);
            CHECK(std::abs(sc.realize(x)[0] - pc.realize(x)[0]) <= 1e-12);
        }
    }
}

TEST_CASE("identity nets are exact and within size bounds") {
    std::mt19937 gen = oracles::rng(18);
    NeuralNetwork id15 = identity_net(1, 5);
    CHECK(id15.realize({-2.5})[0] == doctest::Approx(-2.5).epsilon(1e-15));
    CHECK(id15.metrics().size <= 10);
    NeuralNetwork id32 = identity_net(3, 2);
    for (int i = 0; i < 30; ++i) {
        const auto x = random_input(gen, 3);
        const auto y = id32.realize(x);
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(y[j] - x[j]) <= 1e-15);
    }
}

TEST_CASE("combinator outputs match the compositional oracle broadly") {
    std::mt19937 gen = oracles::rng(19);
    NeuralNetwork a = random_net(gen, 1, 1, 2);
    NeuralNetwork b = random_net(gen, 1, 1, 2);
    NeuralNetwork p = parallel(a, b);
    NeuralNetwork chain = sparse_concat(a, b);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double x = u(gen);
        CHECK(std::abs(p.realize({x})[0] - a.realize({x})[0]) <= 1e-12);
        CHECK(std::abs(p.realize({x})[1] - b.realize({x})[0]) <= 1e-12);
        CHECK(std::abs(chain.realize({x})[0] - a.realize(b.realize({x}))[0]) <= 1e-12);
    }
}
