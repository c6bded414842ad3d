#include <cstdio>

int main() {
    std::puts("entropyforge: CLI not wired up yet");
    return 2;
}
