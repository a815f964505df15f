int main() {
    int x = nondet_int();
    assert(x / 2 != 5);
    return 0;
}
