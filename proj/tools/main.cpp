#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::string out;
  int code = chabauty::cli::run(args, out);
  std::cout << out;
  return code;
}
