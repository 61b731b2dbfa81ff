#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "osa/adversary.hpp"
#include "osa/decision_set.hpp"
#include "osa/ogd_memory.hpp"
#include "osa/regret.hpp"
#include "test_util.hpp"

using namespace osa;

namespace {

// g(x) = ||x - c||^2 as a memory loss: f(w_1..w_m) = ||mean(w) - c||^2
MemoryLoss quadratic_loss(Vec center, int memory = 1) {
    MemoryLoss loss;
    loss.memory = memory;
    loss.window_loss = [center, memory](std::span<const Vec> window) {
        Vec mean(center.size(), 0.0);
        for (const Vec& w : window) axpy(1.0 / memory, w, mean);
        return dot(mean - center, mean - center);
    };
    loss.unary_gradient = [center](const Vec& x) {
        Vec g = x - center;
        for (double& v : g) v *= 2.0;
        return g;
    };
    return loss;
}

// general convex quadratic (x - c)^T Q (x - c), Q = R^T R + eps I
struct Quadratic {
    SymMat q;
    Vec c;

    double value(const Vec& x) const { return q.quadratic_form(x - c); }
    Vec gradient(const Vec& x) const {
        Vec g = q.multiply(x - c);
        for (double& v : g) v *= 2.0;
        return g;
    }
    MemoryLoss as_loss() const {
        Quadratic self = *this;
        MemoryLoss loss;
        loss.memory = 1;
        loss.window_loss = [self](std::span<const Vec> w) { return self.value(w[0]); };
        loss.unary_gradient = [self](const Vec& x) { return self.gradient(x); };
        return loss;
    }
};

Quadratic random_quadratic(int dim, Rng& rng) {
    SymMat r(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) r(i, j) = rng.normal();
    SymMat q(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            double s = i == j ? 0.1 : 0.0;
            for (int k = 0; k < dim; ++k) s += r(k, i) * r(k, j);
            q(i, j) = s;
        }
    Vec c(dim);
    for (double& v : c) v = rng.uniform(-0.5, 0.5);
    return Quadratic{std::move(q), std::move(c)};
}

}  // namespace

TEST_CASE("learning rates") {
    REQUIRE(ogd_eta(1.0, 1.0, 1, 4) == Catch::Approx(0.5));
    REQUIRE(ogd_eta(std::sqrt(2.0), 2.0, 4, 100) == Catch::Approx(std::sqrt(2.0) / 40.0));
    REQUIRE(osa_eta(std::sqrt(2.0), 2.0, 4, 16) == Catch::Approx(std::sqrt(2.0) / 32.0));
    REQUIRE_THROWS_AS(ogd_eta(0.0, 1.0, 1, 4), ParameterError);
    REQUIRE_THROWS_AS(ogd_eta(1.0, -1.0, 1, 4), ParameterError);
    REQUIRE_THROWS_AS(ogd_eta(1.0, 1.0, 5, 4), ParameterError);
}

TEST_CASE("ogd_memory_step") {
    const DecisionSet ball = DecisionSet::ball(2, 1.0);

    SECTION("zero step size keeps the decision") {
        MemoryLoss loss = quadratic_loss(Vec{0.9, 0.0});
        OgdState s = make_ogd_state(ball, 0.0, Vec{0.5, 0.1});
        const OgdState next = ogd_memory_step(s, loss, ball);
        REQUIRE(next.x[0] == Catch::Approx(0.5));
        REQUIRE(next.x[1] == Catch::Approx(0.1));
        REQUIRE(next.step == 1);
    }

    SECTION("interior point needs no projection") {
        // gradient (2, 0) at x = (1, 0) with eta 0.5 lands exactly at the origin
        MemoryLoss loss = quadratic_loss(Vec{0.0, 0.0});
        OgdState s = make_ogd_state(ball, 0.5, Vec{1.0, 0.0});
        const OgdState next = ogd_memory_step(s, loss, ball);
        REQUIRE(norm2(next.x) < 1e-12);
    }

    SECTION("simplex step clips to a vertex, validated by a grid oracle") {
        const DecisionSet simplex = DecisionSet::simplex(2);
        MemoryLoss loss;
        loss.memory = 1;
        loss.window_loss = [](std::span<const Vec>) { return 0.0; };
        loss.unary_gradient = [](const Vec&) { return Vec{-1.0, 0.0}; };
        OgdState s = make_ogd_state(simplex, 1.0, Vec{0.5, 0.5});
        const OgdState next = ogd_memory_step(s, loss, simplex);

        // brute force over the 1-simplex: nearest point to the interim (1.5, 0.5)
        double best = 1e300;
        Vec best_w(2);
        for (int i = 0; i <= 100000; ++i) {
            const double w1 = i * 1e-5;
            const double d = (w1 - 1.5) * (w1 - 1.5) + (1.0 - w1 - 0.5) * (1.0 - w1 - 0.5);
            if (d < best) {
                best = d;
                best_w = {w1, 1.0 - w1};
            }
        }
        REQUIRE(norm2(next.x - best_w) < 1e-4);
        REQUIRE(next.x[0] == Catch::Approx(1.0).margin(1e-12));
    }

    SECTION("history ring holds the last m-1 decisions") {
        MemoryLoss loss = quadratic_loss(Vec{0.0, 0.0}, 3);
        OgdState s = make_ogd_state(ball, 0.1, Vec{0.5, 0.0});
        s = ogd_memory_step(s, loss, ball);
        s = ogd_memory_step(s, loss, ball);
        s = ogd_memory_step(s, loss, ball);
        REQUIRE(s.history.size() == 2);
        REQUIRE(s.step == 3);
    }

    SECTION("faults") {
        MemoryLoss bad;
        bad.memory = 1;
        bad.window_loss = [](std::span<const Vec>) { return 0.0; };
        bad.unary_gradient = [](const Vec&) {
            return Vec{std::numeric_limits<double>::quiet_NaN(), 0.0};
        };
        OgdState s = make_ogd_state(ball, 0.1);
        REQUIRE_THROWS_AS(ogd_memory_step(s, bad, ball), NumericalFault);

        MemoryLoss mismatched;
        mismatched.memory = 1;
        mismatched.window_loss = [](std::span<const Vec>) { return 0.0; };
        mismatched.unary_gradient = [](const Vec&) { return Vec{1.0, 2.0, 3.0}; };
        REQUIRE_THROWS_AS(ogd_memory_step(s, mismatched, ball), ContractViolation);
    }
}

TEST_CASE("run_ogd_memory") {
    const DecisionSet ball = DecisionSet::ball(2, 1.0);

    SECTION("degenerate single-round horizon") {
        std::vector<MemoryLoss> losses{quadratic_loss(Vec{0.4, 0.0})};
        const OgdRun run = run_ogd_memory(losses, ball, ogd_eta(2.0, 2.8, 1, 1));
        REQUIRE(run.decisions.size() == 1);
        REQUIRE(run.losses.size() == 1);
        REQUIRE(run.losses[0] == Catch::Approx(0.16));
    }

    SECTION("contraction toward an interior optimum") {
        const Vec c{0.3, -0.2};
        std::vector<MemoryLoss> losses(50, quadratic_loss(c));
        const OgdRun run = run_ogd_memory(losses, ball, 0.1);
        const double initial = norm2(run.decisions.front() - c);
        double prev = initial;
        for (const Vec& x : run.decisions) {
            const double d = norm2(x - c);
            REQUIRE(d <= prev + 1e-12);
            prev = d;
        }
        REQUIRE(prev < initial);
    }

    SECTION("empty loss sequence") {
        REQUIRE_THROWS_AS(run_ogd_memory({}, ball, 0.1), ParameterError);
    }
}

TEST_CASE("offline_comparator") {
    const DecisionSet ball = DecisionSet::ball(2, 1.0);

    SECTION("single quadratic recovers its center") {
        const Vec c{0.2, -0.3};
        std::vector<MemoryLoss> losses{quadratic_loss(c)};
        const ComparatorResult r = offline_comparator(losses, ball);
        REQUIRE(r.converged);
        REQUIRE(norm2(r.x - c) < 1e-6);
    }

    SECTION("two quadratics meet at the midpoint") {
        std::vector<MemoryLoss> losses{quadratic_loss(Vec{0.4, 0.0}), quadratic_loss(Vec{0.0, 0.4})};
        const ComparatorResult r = offline_comparator(losses, ball);
        REQUIRE(r.x[0] == Catch::Approx(0.2).margin(1e-6));
        REQUIRE(r.x[1] == Catch::Approx(0.2).margin(1e-6));
    }

    SECTION("five random quadratics match a grid search") {
        Rng rng(31);
        std::vector<Quadratic> quads;
        std::vector<MemoryLoss> losses;
        for (int i = 0; i < 5; ++i) {
            quads.push_back(random_quadratic(2, rng));
            losses.push_back(quads.back().as_loss());
        }
        const ComparatorResult r = offline_comparator(losses, ball);

        double best = 1e300;
        Vec best_x{0.0, 0.0};
        for (int i = -1000; i <= 1000; ++i) {
            for (int j = -1000; j <= 1000; ++j) {
                const Vec x{i * 1e-3, j * 1e-3};
                if (dot(x, x) > 1.0) continue;
                double v = 0.0;
                for (const Quadratic& q : quads) v += q.value(x);
                if (v < best) {
                    best = v;
                    best_x = x;
                }
            }
        }
        REQUIRE(norm2(r.x - best_x) < 1e-2);
        REQUIRE(r.objective <= best + 1e-6);
    }

    SECTION("never beaten by random set members") {
        Rng rng(32);
        std::vector<MemoryLoss> losses;
        for (int i = 0; i < 4; ++i) losses.push_back(random_quadratic(3, rng).as_loss());
        const DecisionSet set = DecisionSet::ball(3, 1.0);
        const ComparatorResult r = offline_comparator(losses, set);
        for (int s = 0; s < 10000; ++s) {
            const Vec p = set.sample(rng);
            REQUIRE(r.objective <= detail::summed_value(losses, p) + 1e-8);
        }
    }
}

TEST_CASE("empirical_regret") {
    SECTION("algorithm playing the comparator has zero regret") {
        const Vec c{0.1, 0.1};
        std::vector<MemoryLoss> losses(6, quadratic_loss(c, 2));
        std::vector<Vec> decisions(6, c);
        const RegretTrace trace = empirical_regret(decisions, c, losses);
        REQUIRE(trace.total() == Catch::Approx(0.0).margin(1e-15));
        REQUIRE(trace.cumulative.size() == 5);   // t = m .. T
    }

    SECTION("single counted round") {
        const int m = 3;
        std::vector<MemoryLoss> losses(m, quadratic_loss(Vec{0.5, 0.0}, m));
        std::vector<Vec> decisions{{0.0, 0.0}, {0.1, 0.0}, {0.2, 0.0}};
        const Vec star{0.4, 0.0};
        const RegretTrace trace = empirical_regret(decisions, star, losses);
        REQUIRE(trace.cumulative.size() == 1);
        const double window_loss = losses[2].window_loss(decisions);
        const double star_loss = losses[2].unary(star);
        REQUIRE(trace.total() == Catch::Approx(window_loss - star_loss));
    }

    SECTION("length mismatch is a contract violation") {
        std::vector<MemoryLoss> losses(3, quadratic_loss(Vec{0.0, 0.0}));
        std::vector<Vec> decisions(2, Vec{0.0, 0.0});
        REQUIRE_THROWS_AS(empirical_regret(decisions, Vec{0.0, 0.0}, losses), ContractViolation);
    }
}

TEST_CASE("adversarial run satisfies the sqrt(mT) regret bound") {
    const int m = 3, horizon = 1000, dim = 2;
    const DecisionSet ball = DecisionSet::ball(dim, 1.0);
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const AdversarySuite suite = make_quadratic_adversary(dim, m, horizon, seed);
        const double eta = ogd_eta(ball.diameter(), suite.grad_bound, m, horizon);
        const OgdRun run = run_ogd_memory(suite.losses, ball, eta);
        const ComparatorResult comp = offline_comparator(suite.losses, ball);
        REQUIRE(comp.converged);
        const RegretTrace trace = empirical_regret(run.decisions, comp.x, suite.losses);
        const double bound =
            2.0 * suite.grad_bound * ball.diameter() * std::sqrt(static_cast<double>(m) * horizon);
        REQUIRE(trace.total() <= bound);
    }
}

TEST_CASE("per-step invariants of the memory update") {
    const int m = 4, horizon = 300, dim = 3;
    const DecisionSet ball = DecisionSet::ball(dim, 1.0);
    const AdversarySuite suite = make_quadratic_adversary(dim, m, horizon, 42);
    const double grad_bound = suite.grad_bound;
    const double eta = ogd_eta(ball.diameter(), grad_bound, m, horizon);
    const OgdRun run = run_ogd_memory(suite.losses, ball, eta);

    std::vector<Vec> window;
    for (int t = 1; t < horizon; ++t) {
        REQUIRE(norm2(run.decisions[t] - run.decisions[t - 1]) <= eta * grad_bound + 1e-12);
    }
    for (int t = m - 1; t < horizon; ++t) {
        window.assign(run.decisions.begin() + (t - m + 1), run.decisions.begin() + t + 1);
        const double diff =
            std::abs(suite.losses[t].unary(run.decisions[t]) - suite.losses[t].window_loss(window));
        REQUIRE(diff <= m * eta * grad_bound * grad_bound + 1e-9);
    }
}

TEST_CASE("unary gradients match central finite differences") {
    Rng rng(55);
    std::vector<MemoryLoss> losses;
    for (int i = 0; i < 3; ++i) losses.push_back(random_quadratic(3, rng).as_loss());
    const AdversarySuite suite = make_quadratic_adversary(3, 4, 3, 56);
    for (const MemoryLoss& l : suite.losses) losses.push_back(l);

    const DecisionSet ball = DecisionSet::ball(3, 1.0);
    const double step = 1e-6;
    for (const MemoryLoss& loss : losses) {
        for (int trial = 0; trial < 5; ++trial) {
            const Vec x = ball.sample(rng);
            const Vec grad = loss.unary_gradient(x);
            for (int i = 0; i < 3; ++i) {
                Vec hi = x, lo = x;
                hi[i] += step;
                lo[i] -= step;
                const double fd = (loss.unary(hi) - loss.unary(lo)) / (2.0 * step);
                REQUIRE(std::abs(fd - grad[i]) <= 1e-4 * std::max(1.0, std::abs(grad[i])));
            }
        }
    }
}

TEST_CASE("runs are reproducible given the seed") {
    const AdversarySuite a = make_quadratic_adversary(3, 2, 100, 777);
    const AdversarySuite b = make_quadratic_adversary(3, 2, 100, 777);
    const DecisionSet ball = DecisionSet::ball(3, 1.0);
    const OgdRun ra = run_ogd_memory(a.losses, ball, 0.01);
    const OgdRun rb = run_ogd_memory(b.losses, ball, 0.01);
    REQUIRE(ra.losses == rb.losses);
    for (std::size_t t = 0; t < ra.decisions.size(); ++t) REQUIRE(ra.decisions[t] == rb.decisions[t]);
}

TEST_CASE("estimate_gradient_bound") {
    const DecisionSet ball = DecisionSet::ball(2, 1.0);

    SECTION("constant gradient") {
        const Vec c{3.0, 4.0};
        MemoryLoss linear;
        linear.memory = 1;
        linear.window_loss = [c](std::span<const Vec> w) { return dot(c, w[0]); };
        linear.unary_gradient = [c](const Vec&) { return c; };
        Rng rng(1);
        REQUIRE(estimate_gradient_bound({linear}, ball, 3, rng) == Catch::Approx(1.1 * 5.0));
    }

    SECTION("zero loss") {
        MemoryLoss zero;
        zero.memory = 1;
        zero.window_loss = [](std::span<const Vec>) { return 0.0; };
        zero.unary_gradient = [](const Vec& x) { return Vec(x.size(), 0.0); };
        Rng rng(2);
        REQUIRE(estimate_gradient_bound({zero}, ball, 10, rng) == 0.0);
    }

    SECTION("random quadratic vs dense-sampling oracle") {
        Rng rng(3);
        const Quadratic quad = random_quadratic(2, rng);
        std::vector<MemoryLoss> losses{quad.as_loss()};

        Rng oracle_rng(4);
        double oracle = 0.0;
        for (int s = 0; s < 1000000; ++s) {
            Vec x{oracle_rng.uniform(-1.0, 1.0), oracle_rng.uniform(-1.0, 1.0)};
            if (dot(x, x) > 1.0) continue;   // rejection sampling in the disk
            oracle = std::max(oracle, norm2(quad.gradient(x)));
        }

        Rng est_rng(5);
        const double estimate = estimate_gradient_bound(losses, ball, 20000, est_rng);
        REQUIRE(std::abs(estimate - oracle) <= 0.15 * oracle);
    }

    SECTION("needs at least one sample") {
        Rng rng(6);
        REQUIRE_THROWS_AS(estimate_gradient_bound({}, ball, 0, rng), ParameterError);
    }
}
