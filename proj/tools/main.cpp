#include "cli_app.hpp"

int main(int argc, char** argv) { return tvlm::cli::run(argc, argv); }
