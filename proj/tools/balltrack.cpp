#include "balltrack/cli.hpp"

int main(int argc, char ** argv)
{
  return balltrack::cli::run(argc, argv);
}
