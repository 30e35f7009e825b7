#include "qrigid/fixture.hpp"

namespace qrigid {
namespace {

constexpr double kX1[7][7] = {
    {-0.142491, 0.0251255, 0.16238, 0.0555206, 0.175618, -0.0938962, -0.0929846},
    {0.0251255, 0.167523, -0.0250914, 0.0559988, -0.0593764, 0.0799041, -0.165092},
    {0.16238, -0.0250914, 0.0679049, 0.189596, 0.0681018, 0.0698056, 0.28165},
    {0.0555206, 0.0559988, 0.189596, -0.166191, -0.191064, 0.0831966, 0.0652995},
    {0.175618, -0.0593764, 0.0681018, -0.191064, 0.154533, 0.0791232, 0.176272},
    {-0.0938962, 0.0799041, 0.0698056, 0.0831966, 0.0791232, 0.186155, 0.256028},
    {-0.0929846, -0.165092, 0.28165, 0.0652995, 0.176272, 0.256028, -0.267433}};

constexpr double kX2[7][7] = {
    {0.0710277, -0.149662, 0.200781, -0.167936, 0.0346357, -0.290504, -0.109015},
    {-0.149662, -0.120797, -0.206312, 0.0435404, 0.19233, 0.0415093, 0.026054},
    {0.200781, -0.206312, -0.0635957, -0.0823084, -0.0903822, 0.151709, -0.188229},
    {-0.167936, 0.0435404, -0.0823084, -0.117987, -0.0552701, 0.22579, -0.070853},
    {0.0346357, 0.19233, -0.0903822, -0.0552701, 0.31879, -0.0875183, -0.107513},
    {-0.290504, 0.0415093, 0.151709, 0.22579, -0.0875183, -0.0229677, -0.0643047},
    {-0.109015, 0.026054, -0.188229, -0.070853, -0.107513, -0.0643047, -0.0644701}};

constexpr double kX3[7][7] = {
    {0.150074, 0.101414, -0.0925115, 0.23272, 0.271942, 0.00275495, -0.235919},
    {0.101414, 0.205297, 0.0416222, -0.049573, 0.0364604, 0.172456, 0.105198},
    {-0.0925115, 0.0416222, 0.230496, -0.0894059, 0.126021, 0.0379802, -0.103049},
    {0.23272, -0.049573, -0.0894059, 0.0720574, 0.100826, 0.0606621, -0.158897},
    {0.271942, 0.0364604, 0.126021, 0.100826, -0.0963457, 0.0647688, -0.125808},
    {0.00275495, 0.172456, 0.0379802, 0.0606621, 0.0647688, -0.195335, -0.060983},
    {-0.235919, 0.105198, -0.103049, -0.158897, -0.125808, -0.060983, -0.366243}};

constexpr double kX4[7][7] = {
    {0.0152974, 0.0445368, 0.146435, 0.0931627, 0.115207, 0.0059397, -0.114823},
    {0.0445368, 0.0559448, -0.0651526, 0.254707, 0.0377037, 0.0989529, -0.148023},
    {0.146435, -0.0651526, -0.14917, 0.176034, 0.122183, 0.00138746, 0.072744},
    {0.0931627, 0.254707, 0.176034, 0.0718361, 0.116681, -0.0276206, -0.0653339},
    {0.115207, 0.0377037, 0.122183, 0.116681, -0.144456, -0.308034, -0.00932981},
    {0.0059397, 0.0989529, 0.00138746, -0.0276206, -0.308034, -0.301774, -0.0260149},
    {-0.114823, -0.148023, 0.072744, -0.0653339, -0.00932981, -0.0260149, 0.452321}};

Matrix<FloatScalar> embed(const double (&a)[7][7]) {
  Matrix<FloatScalar> m(7, 7);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) m(i, j) = FloatScalar(a[i][j], 0.0);
  return m;
}

}  // namespace

OperatorTuple<FloatScalar> fixture_n7_d4() {
  OperatorTuple<FloatScalar> t;
  t.n = 7;
  t.mats = {embed(kX1), embed(kX2), embed(kX3), embed(kX4)};
  return t;
}

std::vector<std::string> fixture_names() { return {"paper-n7-d4"}; }

OperatorTuple<FloatScalar> fixture_by_name(const std::string& name) {
  if (name == "paper-n7-d4" || name == "n7-d4") return fixture_n7_d4();
  throw InvalidInput("unknown fixture '" + name + "'");
}

}  // namespace qrigid
