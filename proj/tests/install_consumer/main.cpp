#include <cstdio>
#include "rankzipf/enumeration.hpp"
int main() {
  auto a = rankzipf::build_alphabet(std::vector<double>{0.5, 0.5});
  std::printf("%s\n", rankzipf::to_string(rankzipf::q_tilde(a, 10.0)).c_str());
}
