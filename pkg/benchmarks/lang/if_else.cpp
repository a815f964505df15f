int main() {
    int x = 7;
    int sign;
    if (x > 0) {
        sign = 1;
    } else {
        sign = -1;
    }
    assert(sign == 1);
    return 0;
}
