int main() {
    assert(1 == 2);
    return 0;
}
