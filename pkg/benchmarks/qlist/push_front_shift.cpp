#include <QList>

int main() {
    QList<int> l;
    l.push_front(1);
    l.push_front(2);
    l.push_front(3);
    assert(l.at(0) == 3);
    assert(l.at(1) == 2);
    assert(l.at(2) == 1);
    return 0;
}
