int main() {
    int i = 0;
    while (i < 11) {
        i++;
    }
    assert(i == 11);
    return 0;
}
