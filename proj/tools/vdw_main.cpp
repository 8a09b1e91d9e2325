#include <vdw/cli.hpp>

int main(int argc, char** argv) { return vdw::cli::run(argc, argv); }
