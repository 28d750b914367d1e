#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstring>
#include <string>

std::string g_qnl_cli_path;

int main(int argc, char** argv) {
    doctest::Context context;
    for (int i = 1; i < argc; ++i) {
        if (std::strncmp(argv[i], "--qnl-cli=", 10) == 0) g_qnl_cli_path = argv[i] + 10;
    }
    context.applyCommandLine(argc, argv);
    return context.run();
}
