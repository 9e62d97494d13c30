#include <algorithm>
#include <cmath>
#include <vector>

#include "csbsd/detection.hpp"
#include "csbsd/model.hpp"
#include "csbsd/sensing.hpp"
#include "doctest.h"

using namespace csbsd;
using detection::build_weights;
using detection::detect_state;

TEST_CASE("weights: mixture identity holds bin by bin") {
  auto grid = density::make_grid(16, 30.0);
  for (double q : {0.05, 0.3, 0.7}) {
    auto w = build_weights(grid, q, 10.0);
    CHECK(w.gamma == doctest::Approx(q / (1.0 - q)).epsilon(1e-14));
    for (std::size_t k = 0; k < 16; ++k) {
      CHECK(q * w.w1[k] + (1.0 - q) * w.w0[k] == doctest::Approx(1.0).epsilon(1e-12));
    }
    // w0 is supported on the zero bin only
    for (std::size_t k = 0; k < 16; ++k)
      if (k != grid->zero_index()) CHECK(w.w0[k] == 0.0);
  }
  CHECK_THROWS(build_weights(grid, 0.0, 10.0));
  CHECK_THROWS(build_weights(grid, 1.0, 10.0));
}

TEST_CASE("posterior equal to the prior yields the zero state everywhere") {
  // with post = prior: num = (1-q)-weighted ... ratio = 1 >= gamma for q < 0.5
  auto grid = density::make_grid(16, 30.0);
  const double q = 0.2;
  auto w = build_weights(grid, q, 10.0);
  auto prior = density::spike_slab_prior(grid, q, 10.0);
  CHECK(detect_state(prior.mass(), w) == 0);
}

TEST_CASE("all mass on the zero bin detects zero; mass off the bin detects active") {
  auto grid = density::make_grid(16, 30.0);
  auto w = build_weights(grid, 0.2, 10.0);
  std::vector<double> post(16, 0.0);
  post[grid->zero_index()] = 1.0;
  CHECK(detect_state(post, w) == 0);

  std::fill(post.begin(), post.end(), 0.0);
  post[3] = 1.0;  // no zero-bin mass: numerator 0 -> ratio 0 < gamma
  CHECK(detect_state(post, w) == 1);
}

TEST_CASE("decision boundary: ratio exactly at gamma resolves to zero") {
  // Construct a posterior that makes num/den == gamma exactly.
  // ratio = (w0[c] p_c) / (sum_k w1[k] p_k). Put mass only on bin c and one
  // slab bin t: choose masses to hit equality.
  auto grid = density::make_grid(16, 30.0);
  const double q = 0.25;
  auto w = build_weights(grid, q, 10.0);
  const std::size_t c = grid->zero_index(), t = 4;
  // want: w0c * pc = gamma * (w1c * pc + w1t * pt), with pc + pt = 1
  // solve for pc: pc (w0c - gamma w1c) = gamma w1t pt = gamma w1t (1 - pc)
  const double w0c = w.w0[c], w1c = w.w1[c], w1t = w.w1[t];
  const double denom = w0c - w.gamma * w1c + w.gamma * w1t;
  const double pc = w.gamma * w1t / denom;
  REQUIRE(pc > 0.0);
  REQUIRE(pc < 1.0);
  std::vector<double> post(16, 0.0);
  // just above the boundary: more zero-bin mass, ratio above gamma -> zero state
  post[c] = pc * 1.001;
  post[t] = 1.0 - post[c];
  CHECK(detect_state(post, w) == 0);
  // just below: ratio strictly under gamma -> active
  post[c] = pc * 0.999;
  post[t] = 1.0 - post[c];
  CHECK(detect_state(post, w) == 1);
}

TEST_CASE("degenerate posterior with zero denominator resolves to zero state") {
  // All mass on the zero bin makes the w1 sum strictly positive (slab covers
  // the zero bin), so force a true zero denominator with an off-support vector.
  auto grid = density::make_grid(16, 30.0);
  auto w = build_weights(grid, 0.2, 10.0);
  std::vector<double> post(16, 0.0);  // all-zero "posterior"
  CHECK(detect_state(post, w) == 0);
}

TEST_CASE("rationale report mirrors the decisions") {
  auto grid = density::make_grid(16, 30.0);
  model::PriorParams pp{0.3, 10.0, 1.0};
  auto g = sensing::SensingGraph::generate(6, 8, 3, 3);
  auto sig = model::generate_signal(6, pp, *grid, 4);
  auto meas = model::sense(g, sig, pp.sigma_n, 5);
  auto prior = density::spike_slab_prior(grid, pp.q, pp.sigma_x);
  auto noise = density::gaussian(grid, 0.0, pp.sigma_n);
  auto msgs = bp::init_messages(g, grid);
  bp::BpConfig cfg;
  for (int i = 0; i < 6; ++i) bp::run_iteration(g, meas.z, prior, noise, msgs, cfg);

  auto w = build_weights(grid, pp.q, pp.sigma_x);
  auto s = detect_states(msgs, w);
  auto report = detection::detection_rationale_report(msgs, w);
  REQUIRE(report.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(report[i].index == i);
    CHECK(report[i].s_hat == s[i]);
    CHECK(report[i].gamma == doctest::Approx(w.gamma));
    CHECK(report[i].zero_bin_mass ==
          doctest::Approx(msgs.posterior(i)[grid->zero_index()]).epsilon(1e-12));
    const bool low = report[i].ratio < report[i].gamma;
    CHECK((low ? 1 : 0) == s[i]);
  }
}

TEST_CASE("high-evidence posteriors recover the true states") {
  // strong measurements, tiny noise: BP posteriors should be nearly certain
  auto grid = density::make_grid(16, 30.0);
  model::PriorParams pp{0.25, 10.0, 0.3};
  auto g = sensing::SensingGraph::generate(8, 12, 3, 21);
  auto sig = model::generate_signal(8, pp, *grid, 22);
  auto meas = model::sense(g, sig, pp.sigma_n, 23);
  auto prior = density::spike_slab_prior(grid, pp.q, pp.sigma_x);
  auto noise = density::gaussian(grid, 0.0, pp.sigma_n);
  auto msgs = bp::init_messages(g, grid);
  bp::BpConfig cfg;
  for (int i = 0; i < 10; ++i) bp::run_iteration(g, meas.z, prior, noise, msgs, cfg);
  auto w = build_weights(grid, pp.q, pp.sigma_x);
  auto s = detect_states(msgs, w);
  CHECK(model::ser(s, sig.states) == doctest::Approx(0.0));
}

TEST_CASE("detect_states covers every column") {
  auto grid = density::make_grid(16, 30.0);
  auto g = sensing::SensingGraph::generate(5, 4, 2, 2);
  auto msgs = bp::init_messages(g, grid);
  auto w = build_weights(grid, 0.2, 10.0);
  auto s = detect_states(msgs, w);
  CHECK(s.size() == 5);
}
