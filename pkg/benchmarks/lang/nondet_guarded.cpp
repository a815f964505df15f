int main() {
    int x = nondet_int();
    if (x > 0) {
        assert(x >= 1);
    }
    return 0;
}
