#include <QList>

int main() {
    QList<int> l;
    l.push_back(7);
    l.push_back(8);
    assert(l.front() == 7);
    assert(l.back() == 8);
    return 0;
}
