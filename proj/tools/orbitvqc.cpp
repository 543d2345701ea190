#include "orbitvqc/experiments.hpp"

int main(int argc, char** argv) { return orbitvqc::cli_main(argc, argv); }
