int main() {
    assert(7 / 2 == 3);
    assert(-7 / 2 == -3);
    assert(7 % 2 == 1);
    assert(-7 % 2 == -1);
    int a = 13;
    int b = 4;
    assert(a / b * b + a % b == a);
    return 0;
}
