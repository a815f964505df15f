int add(int a, int b) {
    return a + b;
}

int main() {
    assert(add(2, 2) == 5);
    return 0;
}
