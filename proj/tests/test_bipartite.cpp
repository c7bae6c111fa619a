#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "isospin/bipartite.hpp"
#include "isospin/entropy.hpp"
#include "isospin/error.hpp"

using namespace isospin;

namespace {

const double kLn2 = std::numbers::ln2;
const double kLn3 = std::log(3.0);

// sigma_12 via the full product channel acting on |psi><psi|.
ComplexMatrix product_output_via_tensor(const KrausChannel& ch, const PureState& psi) {
  return tensor(ch, ch).apply(psi).matrix();
}

std::vector<double> sorted(std::array<double, 4> a) {
  std::sort(a.begin(), a.end());
  return {a.begin(), a.end()};
}

}  // namespace

TEST_CASE("schmidt decomposition reproduces the state") {
  Rng rng = make_stream(31, 0);
  for (std::size_t d : {2u, 3u, 4u}) {
    const PureState psi(random_unit_vector(d * d, rng));
    const SchmidtForm f = schmidt_decompose(psi);
    double total = 0.0;
    for (double l : f.lambdas) total += l;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::is_sorted(f.lambdas.rbegin(), f.lambdas.rend()));
    const PureState back = assemble_schmidt_state(f);
    CHECK(std::abs(std::abs(inner(back.amplitudes(), psi.amplitudes())) - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(schmidt_decompose(PureState::basis(6, 0)), Error);
}

TEST_CASE("schmidt weights of a product state and a Bell state") {
  const CVector a{0.6, 0.8}, b{Complex(0, 1), 0.0};
  const SchmidtForm p = schmidt_decompose(PureState(kron(a, b)));
  CHECK(p.lambdas[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p.lambdas[1] < 1e-14);
  const double r = 1.0 / std::numbers::sqrt2;
  const SchmidtForm bell = schmidt_decompose(PureState(CVector{r, 0.0, 0.0, r}));
  CHECK(bell.lambdas[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(bell.lambdas[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("schmidt vector validation") {
  CHECK_THROWS_AS(SchmidtVector({0.5, 0.6}), Error);
  CHECK_THROWS_AS(SchmidtVector({1.5, -0.5}), Error);
  const SchmidtVector v({0.2, 0.5, 0.3});
  CHECK(v[0] == 0.5);
  CHECK(v[2] == 0.2);
}

TEST_CASE("product output: Schmidt sum, tensor channel and closed form agree") {
  const KrausChannel half = build_isotropic(Spin::Half);
  for (double l : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0}) {
    const SchmidtForm f = SchmidtForm::qubit_canonical(l);
    const ComplexMatrix a = product_output(half, f).matrix();
    const ComplexMatrix b = product_output_via_tensor(half, assemble_schmidt_state(f));
    CHECK(max_abs_diff(a, b) < 1e-14);
    CHECK(max_abs_diff(a, qubit_product_output_closed_form(l)) < 1e-15);
  }
  // Random bases and a qutrit channel.
  Rng rng = make_stream(32, 0);
  const KrausChannel one = build_isotropic(Spin::One);
  const PureState psi(random_unit_vector(9, rng));
  CHECK(max_abs_diff(product_output(one, schmidt_decompose(psi)).matrix(),
                     product_output_via_tensor(one, psi)) < 1e-13);
}

TEST_CASE("analytic spectrum") {
  // Vertex: {2/9, 2/9, 4/9, 1/9}.
  const auto v = analytic_qubit_spectrum(0.0);
  CHECK(v[0] == doctest::Approx(2.0 / 9.0).epsilon(1e-15));
  CHECK(v[2] == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
  CHECK(v[3] == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  // Midpoint: f1 = 1/3, f2 = 2/9.
  const auto m = analytic_qubit_spectrum(0.5);
  CHECK(m[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(m[3] == doctest::Approx(2.0 / 9.0).epsilon(1e-15));
  CHECK_THROWS_AS(analytic_qubit_spectrum(1.5), Error);
  CHECK_THROWS_AS(analytic_qubit_spectrum(-0.01), Error);

  const KrausChannel half = build_isotropic(Spin::Half);
  for (int i = 0; i <= 20; ++i) {
    const double l = i / 20.0;
    const auto spec = hermitian_eigen(product_output(half, SchmidtForm::qubit_canonical(l)).matrix());
    const auto expected = sorted(analytic_qubit_spectrum(l));
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(spec.eigenvalues[k] - expected[k]) < 1e-12);
  }
}

TEST_CASE("curve values") {
  const double vertex = 2.0 * kLn3 - (4.0 / 3.0) * kLn2;
  // Midpoint spectrum {2/9, 2/9, 2/9, 1/3}.
  const double mid = -3.0 * (2.0 / 9.0) * std::log(2.0 / 9.0) + kLn3 / 3.0;
  const auto pts = entropy_curve(3);
  REQUIRE(pts.size() == 3);
  CHECK(std::abs(pts[0].entropy_nats - vertex) < 1e-13);
  CHECK(std::abs(pts[1].entropy_nats - mid) < 1e-13);
  CHECK(std::abs(pts[2].entropy_nats - vertex) < 1e-13);
  CHECK(pts[0].entropy_nats == doctest::Approx(1.2730283).epsilon(1e-7));
  CHECK(pts[1].entropy_nats == doctest::Approx(1.3689224).epsilon(1e-7));
  CHECK(curve_constant_term() == doctest::Approx(-(4.0 / 9.0) * std::log(2.0 / 9.0)));
  CHECK_THROWS_AS(entropy_curve(2), Error);
  // Constant part plus the f1, f2 contributions rebuilds the entropy.
  for (double l : {0.2, 0.7}) {
    const double rest = -f1(l) * std::log(f1(l)) - f2(l) * std::log(f2(l));
    CHECK(analytic_curve_entropy(l) == doctest::Approx(curve_constant_term() + rest).epsilon(1e-14));
  }
}

TEST_CASE("numeric curve with canonical bases matches the analytic curve") {
  const auto a = entropy_curve(101);
  const auto n = entropy_curve(101, build_isotropic(Spin::Half), ComplexMatrix::identity(2),
                               ComplexMatrix::identity(2));
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].lambda1 == n[i].lambda1);
    CHECK(std::abs(a[i].entropy_nats - n[i].entropy_nats) < 1e-12);
  }
}

TEST_CASE("csv layout") {
  std::ostringstream os;
  write_curve_csv(os, entropy_curve(3), true);
  const std::string s = os.str();
  CHECK(s.rfind("lambda1,r1,r2,r3,r4,entropy_bits\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 4);
  CHECK(s.find("0.5,") != std::string::npos);
}

TEST_CASE("derivatives") {
  // f1'' against a finite difference of f1.
  for (double l : {0.1, 0.3, 0.5, 0.9}) {
    const double h = 1e-4;
    const double fd = (f1(l + h) - 2.0 * f1(l) + f1(l - h)) / (h * h);
    CHECK(std::abs(fd - f1_second_derivative(l)) < 1e-5);
    const double fd1 = (f1(l + h) - f1(l - h)) / (2.0 * h);
    CHECK(std::abs(fd1 - f1_prime(l)) < 1e-7);
    CHECK(entropy_second_derivative(l) < 0.0);
  }
  const ConcavityReport r = concavity_check(101, 1e-4);
  CHECK(r.all_negative);
  CHECK(r.interior_points == 99);
  CHECK(r.max_sum_residual < 1e-12);
  CHECK(r.max_product_residual < 1e-12);
  CHECK(r.max_closed_form_residual < 1e-4);
  CHECK_THROWS_AS(concavity_check(10, 1e-4), Error);
}

TEST_CASE("vertex minimum for random bases") {
  const VertexMinimumReport r = vertex_minimum_check(build_isotropic(Spin::Half), 20, 51, 42);
  CHECK(r.trials == 20);
  CHECK(r.vertex_minima == 20);
  CHECK(r.worst_gap <= 1e-12);
}
