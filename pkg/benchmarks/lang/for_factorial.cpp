int main() {
    int f = 1;
    for (int i = 2; i <= 5; i++) {
        f = f * i;
    }
    assert(f == 120);
    return 0;
}
