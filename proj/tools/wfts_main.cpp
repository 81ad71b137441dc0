#include <cstdlib>
#include <cstring>
#include <iostream>

#include <unistd.h>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
  const char* env = std::getenv("WFTS_COLOR");
  const bool color = (env == nullptr || std::strcmp(env, "0") != 0) && isatty(STDOUT_FILENO);
  wfts::cli::Terminal term{std::cout, std::cerr, color};
  return wfts::cli::run(argc, argv, term);
}
