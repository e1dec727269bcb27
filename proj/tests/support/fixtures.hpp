#pragma once

#include <string>

namespace cpgscan::fixtures {

// The small C program used throughout the docs as the compression example.
inline const std::string kSquareProgram = R"(#include <stdio.h>
int main(void) {
    int a = 2;
    int b = a * a;
    if (b > a) {
        b = b - a;
    }
    printf("a + b = %d", a + b);
    return 0;
}
)";

inline const std::string kInjection = R"(int main() {
    char *x = input();
    char *y = x;
    exec(y);
    return 0;
}
)";

}  // namespace cpgscan::fixtures
