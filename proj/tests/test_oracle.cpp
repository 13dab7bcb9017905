#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tdf/closure.hpp"
#include "tdf/oracle.hpp"

using namespace tdf;
using namespace tdf::oracle;
using numberfield::FieldSpec;

TEST_CASE("sample values over Q") {
  auto s = sample_image(FieldSpec::rational(), characters::principal_character(1), 2, 10);
  REQUIRE(s.size() == 10);
  CHECK(s.exact);
  std::vector<mpq_class> want{1,  {5, 4}, {10, 9}, {21, 16}, {26, 25}, {25, 18}, {50, 49}, {85, 64}, {91, 81}, {13, 10}};
  for (size_t k = 0; k < 10; ++k) {
    CHECK(s.samples[k].n == k + 1);
    double v = want[k].get_d();
    CHECK(s.samples[k].lo <= v);
    CHECK(s.samples[k].hi >= v);
  }
  CHECK(s.samples[0].lo == 1.0);
  CHECK(s.samples[0].hi == 1.0);
}

TEST_CASE("sample values over Q(i)") {
  auto s = sample_image(FieldSpec::quadratic(-1), characters::principal_character(1), 2, 5);
  REQUIRE(s.size() == 5);
  std::vector<double> want{1, 1.25, 1.3125, 1.04, 1.04};
  std::vector<double> got;
  for (auto& x : s.samples) got.push_back(0.5 * (x.lo + x.hi));
  std::sort(want.begin(), want.end());
  std::sort(got.begin(), got.end());
  for (size_t k = 0; k < 5; ++k) CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-14));
}

TEST_CASE("memoized values equal direct divisor sums") {
  for (auto chi : {characters::principal_character(1), characters::kronecker_character(-4),
                   characters::principal_character(6)}) {
    auto s = sample_image(FieldSpec::rational(), chi, rigor::parse_rational("3/2"), 10'000);
    for (auto& x : s.samples) {
      auto v = naive_sigma(x.n, chi, rigor::parse_rational("3/2"));
      REQUIRE(v.lo_double() <= x.hi);
      REQUIRE(x.lo <= v.hi_double());
    }
  }
}

TEST_CASE("verification against computed closures") {
  auto chi = characters::principal_character(5);
  auto c = closure::compute_closure(FieldSpec::rational(), chi, 2);
  auto s = sample_image(FieldSpec::rational(), chi, 2, 100'000);
  auto rep = verify_against_closure(s, c);
  CHECK(rep.contained);
  CHECK(rep.all_hit);
  CHECK(rep.classes_match);
  CHECK(rep.passed());

  auto g = closure::compute_closure(FieldSpec::quadratic(-1), characters::principal_character(1), 2);
  auto sg = sample_image(FieldSpec::quadratic(-1), characters::principal_character(1), 2, 50'000);
  CHECK(verify_against_closure(sg, g).passed());
}

TEST_CASE("empty sample set") {
  auto chi = characters::principal_character(1);
  auto c = closure::compute_closure(FieldSpec::rational(), chi, 2);
  auto s = sample_image(FieldSpec::rational(), chi, 2, 10);
  s.samples.clear();
  auto rep = verify_against_closure(s, c);
  CHECK(rep.contained);
  CHECK_FALSE(rep.all_hit);
  CHECK_FALSE(rep.passed());
}

TEST_CASE("perturbed closure is caught") {
  auto chi = characters::principal_character(1);
  auto c = closure::compute_closure(FieldSpec::rational(), chi, 2);
  auto s = sample_image(FieldSpec::rational(), chi, 2, 20'000);
  // move the left end of the middle interval up past 10/9
  c.intervals[1].lo = rigor::Enclosure(mpq_class(112, 100));
  auto rep = verify_against_closure(s, c);
  CHECK_FALSE(rep.contained);
  CHECK(rep.outside > 0);
}

TEST_CASE("figure output") {
  auto dir = std::filesystem::temp_directory_path();
  auto s = sample_image(FieldSpec::rational(), characters::principal_character(1), 2, 10);
  auto csv = (dir / "tdf_test_fig.csv").string();
  emit_figure(s, csv, FigureFormat::Csv);
  std::ifstream in(csv);
  std::string line;
  int rows = 0;
  std::getline(in, line);
  CHECK(line == "n,sigma");
  while (std::getline(in, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 1);
    std::stringstream ss(line);
    std::string a, b;
    std::getline(ss, a, ',');
    std::getline(ss, b, ',');
    CHECK(std::stoul(a) == static_cast<unsigned long>(rows + 1));
    CHECK(std::stod(b) >= 1.0);
    ++rows;
  }
  CHECK(rows == 10);

  auto svg = (dir / "tdf_test_fig.svg").string();
  emit_figure(s, svg, FigureFormat::Svg);
  std::ifstream sv(svg);
  std::string head;
  std::getline(sv, head);
  CHECK(head.rfind("<svg", 0) == 0);
  std::filesystem::remove(csv);
  std::filesystem::remove(svg);
}
