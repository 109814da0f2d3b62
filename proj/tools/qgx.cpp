#include <iostream>
int main() { std::cout << "qgx: not wired up yet\n"; return 2; }
