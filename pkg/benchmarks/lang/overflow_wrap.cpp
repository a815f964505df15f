int main() {
    int x = 2147483647;
    x = x + 1;
    assert(x == -2147483647 - 1);
    return 0;
}
