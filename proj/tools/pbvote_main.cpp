#include "pbvote/cli.hpp"

int main(int argc, char** argv) { return pbvote::run_main(argc, argv); }
