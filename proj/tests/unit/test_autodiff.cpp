// Copyright 2026 The adenet Authors.
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
#include <limits>

#include <doctest.h>

#include "autodiff/gradcheck.h"
#include "autodiff/ops.h"
#include "autodiff/params.h"
#include "autodiff/tape.h"
#include "util/error.h"
#include "util/rng.h"

namespace adenet {
namespace {

Tensor random_tensor(Rng& rng, Shape shape, double scale = 1.0) {
  Tensor t(std::move(shape));
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.uniform(-scale, scale);
  return t;
}

// Scalarizes an op output with fixed random weights so every output
// coordinate contributes to the checked gradient.
Var project(Tape& tape, Var y, std::uint64_t seed) {
  Rng rng(seed);
  Var w = tape.constant(random_tensor(rng, y.shape()));
  return ad::sum(ad::mul(y, w));
}

void check_unary(const char* name, const std::function<Var(Tape&, Var)>& op, Shape shape,
                 double tol = 1e-6) {
  Rng rng(11);
  const Tensor x = random_tensor(rng, shape);
  const auto r = finite_diff_check([&](Tape& t, Var v) { return project(t, op(t, v), 5); }, x);
  INFO(name << " max rel error " << r.max_rel_error);
  CHECK(r.max_rel_error < tol);
}

}  // namespace

TEST_SUITE("autodiff") {

TEST_CASE("matmul and matvec values") {
  Tape tape;
  Var a = tape.input(Tensor::matrix(2, 3, {1, 2, 3, 4, 5, 6}));
  Var b = tape.input(Tensor::matrix(3, 2, {7, 8, 9, 10, 11, 12}));
  Var c = ad::matmul(a, b);
  CHECK(c.shape() == Shape{2, 2});
  CHECK(c.value().at(0, 0) == 58);
  CHECK(c.value().at(0, 1) == 64);
  CHECK(c.value().at(1, 0) == 139);
  CHECK(c.value().at(1, 1) == 154);
  Var x = tape.input(Tensor::vector({1, 0, -1}));
  Var y = ad::matvec(a, x);
  CHECK(y.value()[0] == -2);
  CHECK(y.value()[1] == -2);
  Var z = ad::matvec_t(a, tape.input(Tensor::vector({1, 1})));
  CHECK(z.value()[0] == 5);
  CHECK(z.value()[1] == 7);
  CHECK(z.value()[2] == 9);
}

TEST_CASE("softmax matches closed form and masked entries are exactly zero") {
  Tape tape;
  Var x = tape.input(Tensor::vector({1, 2, 3}));
  Var p = ad::softmax(x);
  const double z = std::exp(1.0) + std::exp(2.0) + std::exp(3.0);
  for (int i = 0; i < 3; ++i) CHECK(p.value()[i] == doctest::Approx(std::exp(i + 1.0) / z).epsilon(1e-14));
  Var q = ad::softmax(x, ad::Mask{1, 0, 1});
  CHECK(q.value()[1] == 0.0);
  CHECK(q.value()[0] + q.value()[2] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(q.value()[0] == doctest::Approx(1.0 / (1.0 + std::exp(2.0))).epsilon(1e-14));
}

TEST_CASE("softmax is stable for large logits") {
  Tape tape;
  Var p = ad::softmax(tape.input(Tensor::vector({1000, 1000, -1000})));
  CHECK(p.value()[0] == doctest::Approx(0.5));
  CHECK(p.value()[2] == 0.0);
  CHECK(p.value().all_finite());
}

TEST_CASE("degenerate or mismatched mask is rejected") {
  Tape tape;
  Var x = tape.input(Tensor::vector({1, 2}));
  CHECK_THROWS_AS(ad::softmax(x, ad::Mask{0, 0}), DimensionError);
  CHECK_THROWS_AS(ad::softmax(x, ad::Mask{1}), DimensionError);
}

TEST_CASE("masked softmax passes no gradient to masked logits") {
  Tape tape;
  Var x = tape.input(Tensor::vector({0.3, -0.2, 0.9, 0.1}));
  Var p = ad::softmax(x, ad::Mask{1, 1, 0, 1});
  Var w = tape.constant(Tensor::vector({1, 2, 3, 4}));
  tape.backward(ad::sum(ad::mul(p, w)));
  CHECK(tape.grad(x)[2] == 0.0);
  CHECK(tape.grad(x)[0] != 0.0);
}

TEST_CASE("cross entropy floors the probability") {
  Tape tape;
  Var p = tape.input(Tensor::vector({1.0, 0.0}));
  Var l = ad::cross_entropy(p, 1);
  CHECK(l.value().item() == doctest::Approx(-std::log(ad::kProbabilityFloor)));
  CHECK(std::isfinite(l.value().item()));
  Var l0 = ad::cross_entropy(tape.input(Tensor::vector({0.25, 0.75})), 0);
  CHECK(l0.value().item() == doctest::Approx(std::log(4.0)));
  CHECK_THROWS_AS(ad::cross_entropy(p, 2), DimensionError);
}

TEST_CASE("conv_max picks the best window per filter") {
  Tape tape;
  // Three positions of width-1 features; one filter of width 2 summing the window.
  Var x = tape.input(Tensor::matrix(3, 1, {1, 5, -2}));
  Var f = tape.input(Tensor::matrix(1, 2, {1, 1}));
  Var b = tape.input(Tensor::vector({0.5}));
  Var y = ad::conv_max(x, f, b, 2);
  CHECK(y.value()[0] == 6.5);
  CHECK_THROWS_AS(ad::conv_max(x, f, b, 4), DimensionError);
}

TEST_CASE("shape errors carry both shapes") {
  Tape tape;
  Var a = tape.input(Tensor::matrix(2, 3, std::vector<double>(6, 1.0)));
  Var x = tape.input(Tensor::vector({1, 2}));
  try {
    ad::matvec(a, x);
    FAIL("expected DimensionError");
  } catch (const DimensionError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("2x3") != std::string::npos);
  }
  CHECK_THROWS_AS(ad::add(x, tape.input(Tensor::vector({1, 2, 3}))), DimensionError);
  CHECK_THROWS_AS(ad::slice(x, 1, 2), DimensionError);
  CHECK_THROWS_AS(ad::lookup(a, 2), DimensionError);
}

TEST_CASE("ops on different tapes are rejected") {
  Tape t1, t2;
  Var a = t1.input(Tensor::vector({1}));
  Var b = t2.input(Tensor::vector({1}));
  CHECK_THROWS_AS(ad::add(a, b), UsageError);
}

TEST_CASE("dropout is the identity outside training") {
  Tape tape;
  Rng rng(1);
  Var x = tape.input(Tensor::vector({1, 2, 3}));
  const std::size_t before = tape.size();
  Var y = ad::dropout(x, 0.5, false, rng);
  CHECK(y.id() == x.id());
  CHECK(tape.size() == before);
  CHECK_THROWS_AS(ad::dropout(x, 1.0, true, rng), UsageError);
}

TEST_CASE("inverted dropout keeps the expectation") {
  Tape tape;
  Rng rng(3);
  const std::size_t n = 200000;
  Var x = tape.input(Tensor(Shape{n}, 1.0));
  Var y = ad::dropout(x, 0.5, true, rng);
  double total = 0.0;
  std::size_t zeros = 0;
  for (double v : y.value().data()) {
    total += v;
    zeros += v == 0.0;
    CHECK((v == 0.0 || v == 2.0));
  }
  CHECK(total / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(static_cast<double>(zeros) / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("backward visits each reachable node once") {
  Tape tape;
  Var x = tape.input(Tensor::vector({0.5, -0.5}));
  Var y = ad::add(ad::tanh(x), ad::tanh(x));
  Var unused = ad::sigmoid(x);
  (void)unused;
  tape.backward(ad::sum(y));
  CHECK(tape.backward_visits() <= tape.size());
  const double d = 1.0 - std::tanh(0.5) * std::tanh(0.5);
  CHECK(tape.grad(x)[0] == doctest::Approx(2.0 * d).epsilon(1e-14));
}

TEST_CASE("frozen parameters receive no gradient") {
  ParamStore params;
  const ParamId frozen = params.add("frozen", {3, 2}, false);
  const ParamId live = params.add("live", {3, 2});
  params[frozen].value = Tensor::matrix(3, 2, {1, 2, 3, 4, 5, 6});
  params[live].value = Tensor::matrix(3, 2, {1, 2, 3, 4, 5, 6});
  Tape tape(&params);
  Var y = ad::concat({ad::lookup(tape.param(frozen), 1), ad::lookup(tape.param(live), 2)});
  tape.backward(ad::sum(y));
  CHECK(tape.param_grads().slot(frozen).empty());
  const auto& slot = tape.param_grads().slot(live);
  CHECK(slot.dense.empty());
  REQUIRE(slot.rows.size() == 1);
  CHECK(slot.rows.begin()->first == 2);
}

TEST_CASE("sparse row gradients accumulate and densify") {
  Gradients g(1);
  auto r = g.row(0, 1, 2);
  r[0] = 1.0;
  r[1] = 2.0;
  g.row(0, 1, 2)[0] += 3.0;
  Gradients h(1);
  h.row(0, 0, 2)[1] = 5.0;
  g.merge(h);
  const auto dense = g.to_dense(0, Tensor(Shape{3, 2}));
  CHECK(dense == std::vector<double>{0, 5, 4, 2, 0, 0});
  g.scale(0.5);
  CHECK(g.squared_norm() == doctest::Approx(2.5 * 2.5 + 2 * 2 + 1));
}

TEST_CASE("per-op gradients agree with central differences") {
  Rng rng(2);
  const Tensor w = random_tensor(rng, {3, 4});
  const Tensor w2 = random_tensor(rng, {4, 2});
  const Tensor other = random_tensor(rng, {4});
  check_unary("matmul", [&](Tape& t, Var x) { return ad::matmul(t.constant(w), x); }, {4, 2});
  check_unary("matmul lhs", [&](Tape& t, Var x) { return ad::matmul(x, t.constant(w2)); }, {3, 4});
  check_unary("matvec", [&](Tape& t, Var x) { return ad::matvec(t.constant(w), x); }, {4});
  check_unary("matvec weight", [&](Tape& t, Var x) { return ad::matvec(x, t.constant(other)); }, {3, 4});
  check_unary("matvec_t", [&](Tape& t, Var x) { return ad::matvec_t(t.constant(w), x); }, {3});
  check_unary("add", [&](Tape& t, Var x) { return ad::add(x, t.constant(other)); }, {4});
  check_unary("mul", [&](Tape& t, Var x) { return ad::mul(x, ad::tanh(x)); }, {4});
  check_unary("scale", [&](Tape&, Var x) { return ad::scale(x, -2.5); }, {4});
  check_unary("tanh", [&](Tape&, Var x) { return ad::tanh(x); }, {5});
  check_unary("sigmoid", [&](Tape&, Var x) { return ad::sigmoid(x); }, {5});
  check_unary("concat", [&](Tape& t, Var x) { return ad::concat({x, t.constant(other), x}); }, {3});
  check_unary("slice", [&](Tape&, Var x) { return ad::slice(x, 1, 3); }, {5});
  check_unary("stack", [&](Tape&, Var x) { return ad::stack({x, ad::tanh(x)}); }, {3});
  check_unary("softmax", [&](Tape&, Var x) { return ad::softmax(x); }, {5});
  check_unary("softmax masked", [&](Tape&, Var x) { return ad::softmax(x, {1, 0, 1, 1, 0}); }, {5});
  check_unary("lookup", [&](Tape&, Var x) { return ad::lookup(x, 1); }, {3, 2});
  check_unary("dropout", [&](Tape&, Var x) { Rng r(9); return ad::dropout(x, 0.4, true, r); }, {6});
  check_unary("cross entropy", [&](Tape&, Var x) { return ad::cross_entropy(ad::softmax(x), 2); }, {4});
  check_unary("add_n", [&](Tape&, Var x) { return ad::add_n({x, ad::tanh(x), x}); }, {3});
  check_unary("conv_max", [&](Tape& t, Var x) {
    Rng r(4);
    return ad::conv_max(x, t.constant(random_tensor(r, {3, 4})), t.constant(random_tensor(r, {3})), 2);
  }, {4, 2});
  check_unary("conv_max filters", [&](Tape& t, Var f) {
    Rng r(4);
    return ad::conv_max(t.constant(random_tensor(r, {4, 2})), f, t.constant(random_tensor(r, {3})), 2);
  }, {3, 4});
}

TEST_CASE("relative error definition") {
  CHECK(relative_error(1.0, 1.0) == 0.0);
  CHECK(relative_error(0.0, 0.0) == 0.0);
  CHECK(relative_error(2.0, 1.0) == doctest::Approx(0.5));
  CHECK(relative_error(1e-10, 0.0) == doctest::Approx(1e-2));
}

TEST_CASE("parameter store lookup") {
  ParamStore p;
  p.add("a", {2, 3});
  p.add("b", {4});
  CHECK(p.find("b") == 1);
  CHECK(p.contains("a"));
  CHECK(!p.contains("c"));
  CHECK(p.scalar_count() == 10);
  CHECK_THROWS(p.find("c"));
}

}  // TEST_SUITE

}  // namespace adenet
