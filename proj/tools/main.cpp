#include "steklov/cli.hpp"

int main(int argc, char** argv) {
  return steklov::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
