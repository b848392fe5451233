#include "sqv/app.hpp"

int main(int argc, char** argv) { return sqv::app::run_cli(argc, argv); }
