#include "keller/cli.hpp"

int main(int argc, char** argv) {
  return keller::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
