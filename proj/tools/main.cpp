#include "mobas/harness.hpp"

int main(int argc, char** argv)
{
    return mobas::harness::cli_main(argc, argv);
}
