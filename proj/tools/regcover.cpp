#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const regcover::cli::CommandResult result = regcover::cli::dispatch(args);
  if (!result.text.empty()) {
    std::cout << result.text;
  } else {
    std::cout << result.payload.dump(2) << '\n';
  }
  return result.exit_code;
}
