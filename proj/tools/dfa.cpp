#include "dfa/cli.hpp"

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <unistd.h>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    const char* env = std::getenv("DFA_COLOR");
    const bool color = isatty(STDOUT_FILENO) && !(env && std::strcmp(env, "0") == 0);
    return dfa::runCli(args, std::cout, std::cerr, color);
}
