int main() {
    int x = nondet_int();
    assert(x != 3);
    return 0;
}
