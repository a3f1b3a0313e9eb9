#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "cheb2relu/cheb_emulator.hpp"
#include "cheb2relu/nn.hpp"
#include "cheb2relu/nn_calculus.hpp"
#include "support/oracles.hpp"

using namespace cheb2relu;

TEST_CASE("single affine layer applies no activation") {
    NeuralNetwork net = affine_network(Layer(1, 1, {{0, 0, 1.0}}, {0.0}));
    CHECK(net.realize({-3.0})[0] == -3.0);
}

TEST_CASE("one hidden ReLU layer clips negatives") {
    NeuralNetwork net(1, {Layer(1, 1, {{0, 0, 1.0}}, {0.0}), Layer(1, 1, {{0, 0, 1.0}}, {0.0})});
    CHECK(net.realize({-3.0})[0] == 0.0);
    CHECK(net.realize({2.5})[0] == 2.5);
}

TEST_CASE("identity network realizes the identity") {
    NeuralNetwork id = identity_net(1, 2);
    CHECK(id.realize({0.7})[0] == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("dimension mismatch raises a structural error") {
    NeuralNetwork net = affine_network(Layer(2, 3, {{0, 0, 1.0}}, {0.0, 0.0}));
    CHECK_THROWS_AS(net.realize({1.0}), StructuralError);
    CHECK_THROWS_AS(NeuralNetwork(2, {Layer(1, 1, {{0, 0, 1.0}}, {0.0})}), StructuralError);
    CHECK_THROWS_AS(net.realize_with_derivative(0.5), StructuralError);
}

TEST_CASE("derivative of the rho(x)-rho(-x) identity") {
    NeuralNetwork id = identity_net(1, 2);
    const auto [val, der] = id.realize_with_derivative(0.3);
    CHECK(val[0] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(der[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("derivative of a single affine layer") {
    NeuralNetwork net = affine_network(Layer(1, 1, {{0, 0, 2.0}}, {1.0}));
    const auto [val, der] = net.realize_with_derivative(5.0);
    CHECK(val[0] == doctest::Approx(11.0));
    CHECK(der[0] == doctest::Approx(2.0));
}

TEST_CASE("tower component 3 derivative approximates T_2'") {
    const double delta = 1e-3;
    NeuralNetwork tower = build_cheb_tower(1, delta);
    const auto [val, der] = tower.realize_with_derivative(0.5);
    CHECK(std::abs(der[2] - oracles::cheb_t_prime(2, 0.5)) <= delta);
    CHECK(std::abs(der[2] - 2.0) <= delta);
}

TEST_CASE("metrics count stored nonzeros") {
    NeuralNetwork net =
        affine_network(Layer(2, 2, {{0, 0, 1.0}, {0, 1, 0.0}, {1, 1, 0.0}}, {1.0, 0.0}));
    const SizeMetrics m = net.metrics();
    CHECK(m.size == 2);
    CHECK(m.depth == 1);
    CHECK(m.size_first == 2);
    CHECK(m.size_last == 2);
}

TEST_CASE("identity metrics satisfy the 2dL bounds") {
    for (int d : {1, 3}) {
        for (int L : {1, 2, 5}) {
            const SizeMetrics m = identity_net(d, L).metrics();
            CHECK(m.size <= 2 * d * L);
            CHECK(m.size_first <= 2 * d);
            CHECK(m.size_last <= 2 * d);
            CHECK(m.depth == L);
        }
    }
}

TEST_CASE("base tower first layer stays within the product budget") {
    const SizeMetrics m = build_cheb_tower(1, 1e-2).metrics();
    CHECK(static_cast<double>(m.size_first) <= tower_size_first_bound());
}

TEST_CASE("realization stays finite for finite weights") {
    std::mt19937 gen = oracles::rng(17);
    std::uniform_real_distribution<double> w(-2.0, 2.0);
    std::vector<Layer> layers;
    int prev = 3;
    for (int l = 0; l < 4; ++l) {
        const int rows = l == 3 ? 2 : 5;
        std::vector<Triplet> trips;
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < prev; ++c)
                if (w(gen) > 0)
                    trips.push_back({r, c, w(gen)});
        std::vector<double> bias(rows);
        for (double& b : bias)
            b = w(gen);
        layers.emplace_back(rows, prev, std::move(trips), std::move(bias));
        prev = rows;
    }
    NeuralNetwork net(3, std::move(layers));
    for (int i = 0; i < 50; ++i) {
        const std::vector<double> x = {w(gen), w(gen), w(gen)};
        for (double v : net.realize(x))
            CHECK(std::isfinite(v));
        const auto again = net.realize(x);
        CHECK(net.realize(x) == again); // deterministic
    }
}

TEST_CASE("derivative matches central differences away from breakpoints") {
    // A handful of structurally different univariate networks.
    std::vector<NeuralNetwork> nets;
    nets.push_back(identity_net(1, 3));
    nets.push_back(build_cheb_tower(2, 1e-2));
    {
        std::mt19937 gen = oracles::rng(5);
        std::uniform_real_distribution<double> w(-1.5, 1.5);
        std::vector<Layer> layers;
        std::vector<Triplet> t1;
        std::vector<double> b1;
        for (int r = 0; r < 6; ++r) {
            t1.push_back({r, 0, w(gen)});
            b1.push_back(w(gen));
        }
        layers.emplace_back(6, 1, std::move(t1), std::move(b1));
        std::vector<Triplet> t2;
        for (int c = 0; c < 6; ++c)
            t2.push_back({0, c, w(gen)});
        layers.emplace_back(1, 6, std::move(t2), std::vector<double>{w(gen)});
        nets.emplace_back(1, std::move(layers));
    }
    std::mt19937 gen = oracles::rng(7);
    std::uniform_real_distribution<double> xs(-0.95, 0.95);
    const double step = 1e-6;
    for (const NeuralNetwork& net : nets) {
        int checked = 0;
        while (checked < 100) {
            const double x = xs(gen);
            const auto [val, der] = net.realize_with_derivative(x);
            const std::vector<double> up = net.realize({x + step});
            const std::vector<double> md = net.realize({x});
            const std::vector<double> dn = net.realize({x - step});
            // Breakpoint detection independent of the derivative path: on a
            // linear piece the second difference of a PWL function vanishes.
            bool smooth = true;
            for (std::size_t i = 0; i < val.size(); ++i)
                if (std::abs(up[i] - 2.0 * md[i] + dn[i]) >
                    1e-12 * std::max(1.0, std::abs(md[i])))
                    smooth = false;
            if (!smooth)
                continue;
            for (std::size_t i = 0; i < val.size(); ++i) {
                const double fd = (up[i] - dn[i]) / (2.0 * step);
                CHECK(std::abs(fd - der[i]) <= 1e-4);
            }
            ++checked;
        }
    }
}

TEST_CASE("size equals the sum of per-layer stored nonzeros") {
    NeuralNetwork net = build_cheb_tower(2, 1e-2);
    long long total = 0;
    for (const Layer& l : net.layers())
        total += l.nnz();
    CHECK(net.metrics().size == total);
}

TEST_CASE("JSON round trip is bit exact") {
    NeuralNetwork net = build_cheb_tower(2, 1e-3);
    const std::string text = net.to_json();
    NeuralNetwork back = NeuralNetwork::from_json(text);
    CHECK(back.to_json() == text);
    std::mt19937 gen = oracles::rng(3);
    std::uniform_real_distribution<double> xs(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const double x = xs(gen);
        CHECK(net.realize({x}) == back.realize({x}));
    }
}

TEST_CASE("malformed JSON raises a data error") {
    CHECK_THROWS_AS(NeuralNetwork::from_json("{"), DataError);
    CHECK_THROWS_AS(NeuralNetwork::from_json("{\"input_dim\":1}"), DataError);
}
