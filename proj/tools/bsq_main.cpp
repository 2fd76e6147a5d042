#include "bsq/io.hpp"

int main(int argc, char** argv) { return bsq::dispatch(argc, argv); }
