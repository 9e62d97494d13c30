#include <cmath>

#include "csbsd/grid.hpp"
#include "doctest.h"

using csbsd::density::make_grid;
using csbsd::density::ValueGrid;

TEST_CASE("grid geometry") {
  ValueGrid g(16, 30.0);
  CHECK(g.size() == 16);
  CHECK(g.step() == doctest::Approx(3.75));
  CHECK(g.zero_index() == 8);
  CHECK(g.point(8) == 0.0);  // exact, not approximate
  CHECK(g.point(0) == doctest::Approx(-30.0));
  CHECK(g.point(15) == doctest::Approx(30.0 - 3.75));
  // uniform spacing
  for (std::size_t k = 1; k < 16; ++k)
    CHECK(g.point(k) - g.point(k - 1) == doctest::Approx(3.75).epsilon(1e-12));
  // symmetry about the zero bin (excluding the unmatched low endpoint)
  for (std::size_t k = 1; k < 16; ++k)
    CHECK(g.point(k) == doctest::Approx(-g.point(16 - k)).epsilon(1e-12));
}

TEST_CASE("nearest_index: exact points, midpoint ties, clamping") {
  ValueGrid g(16, 30.0);
  for (std::size_t k = 0; k < 16; ++k) CHECK(g.nearest_index(g.point(k)) == k);
  CHECK(g.nearest_index(0.0) == 8);
  // midpoint between bins 8 and 9 is 1.875: ties round toward the lower index
  CHECK(g.nearest_index(1.875) == 8);
  CHECK(g.nearest_index(1.876) == 9);
  CHECK(g.nearest_index(-1.875) == 7);  // midpoint of bins 7..8 is -1.875
  bool in = true;
  CHECK(g.nearest_index(1e9, &in) == 15);
  CHECK_FALSE(in);
  in = true;
  CHECK(g.nearest_index(-1e9, &in) == 0);
  CHECK_FALSE(in);
  in = false;
  CHECK(g.nearest_index(3.0, &in) == 9);
  CHECK(in);
}

TEST_CASE("nearest_index rejects non-finite input") {
  ValueGrid g(8, 1.0);
  CHECK_THROWS(g.nearest_index(std::nan("")));
  CHECK_THROWS(g.nearest_index(INFINITY));
}

TEST_CASE("wrapped_index: agrees with nearest_index in range, wraps outside") {
  ValueGrid g(16, 30.0);
  const double period = 16 * g.step();  // 60
  bool in = false;
  for (std::size_t k = 0; k < 16; ++k) {
    CHECK(g.wrapped_index(g.point(k), &in) == k);
    CHECK(in);
    // one period away lands on the same bin, flagged as reduced
    CHECK(g.wrapped_index(g.point(k) + period, &in) == k);
    CHECK_FALSE(in);
    CHECK(g.wrapped_index(g.point(k) - period, &in) == k);
    CHECK_FALSE(in);
  }
  // same midpoint tie rule as nearest_index
  CHECK(g.wrapped_index(1.875) == 8);
  CHECK(g.wrapped_index(1.876) == 9);
  // just past the top endpoint wraps to the low end instead of clamping
  CHECK(g.nearest_index(28.2) == 15);
  CHECK(g.wrapped_index(28.2) == 0);  // 28.2 snaps to 30 = -30 (mod 60)
  // within half a step of the low endpoint still counts as in range
  CHECK(g.wrapped_index(-31.0, &in) == 0);
  CHECK(in);
  CHECK(g.wrapped_index(-32.0, &in) == 15);  // nearer 26.25 - 60 than -30
  CHECK_FALSE(in);
  CHECK_THROWS(g.wrapped_index(std::nan("")));
}

TEST_CASE("grid validation") {
  CHECK_THROWS(ValueGrid(0, 1.0));
  CHECK_THROWS(ValueGrid(2, 1.0));   // below minimum resolution
  CHECK_THROWS(ValueGrid(12, 1.0));  // not a power of two
  CHECK_THROWS(ValueGrid(16, 0.0));
  CHECK_THROWS(ValueGrid(16, -3.0));
  CHECK_NOTHROW(ValueGrid(4, 1.0));
}

TEST_CASE("same_as and make_grid") {
  auto a = make_grid(16, 30.0);
  auto b = make_grid(16, 30.0);
  auto c = make_grid(32, 30.0);
  CHECK(a->same_as(*b));
  CHECK_FALSE(a->same_as(*c));
}
