#include "cli_commands.hpp"

int main(int argc, char** argv)
{
    return cbath::cli::run(argc, argv);
}
