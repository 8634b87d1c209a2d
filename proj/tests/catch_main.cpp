// Single compilation of the amalgamated Catch2 sources; test files include
// only the header.
#include <catch2/catch_amalgamated.cpp>
