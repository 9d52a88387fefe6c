// Single compilation of the Catch2 amalgamation (including its default
// main), shared by every test executable.
#include <catch2/catch_amalgamated.cpp>
