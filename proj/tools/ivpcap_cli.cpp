#include <iostream>
int main() { std::cout << "cli stub\n"; return 0; }
