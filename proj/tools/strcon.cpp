#include <strcon/cli.hpp>

int main(int argc, char** argv) { return strcon::dispatch(argc, argv); }
