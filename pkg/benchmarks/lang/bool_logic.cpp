int main() {
    bool a = true;
    bool b = false;
    assert(a || b);
    assert(!(a && b));
    assert(a != b);
    return 0;
}
