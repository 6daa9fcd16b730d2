#include "glider/session.hpp"

int main(int argc, char** argv) { return glider::run_command_line(argc, argv); }
