#include <cstdio>

int main() {
  std::printf("hartree-inverse: CLI not wired yet\n");
  return 0;
}
