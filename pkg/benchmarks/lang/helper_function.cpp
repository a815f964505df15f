int add(int a, int b) {
    return a + b;
}

int main() {
    assert(add(2, 2) == 4);
    assert(add(-1, 1) == 0);
    return 0;
}
