#include "evothresh/cli.hpp"

int main(int argc, char** argv) { return evothresh::dispatch(argc, argv); }
