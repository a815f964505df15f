int main() {
    int x;
    x = 1;
    x = x + 2;
    assert(x == 3);
    return 0;
}
