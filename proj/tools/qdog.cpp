#include <qdog/cli.hpp>

int main(int argc, char** argv) {
    return qdog::cli::run(argc, argv);
}
