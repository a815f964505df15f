#include <QList>

int main() {
    QList<int> l;
    assert(l.size() == 0);
    l.push_back(1);
    assert(l.size() == 1);
    l.push_front(2);
    assert(l.size() == 2);
    l.pop_back();
    assert(l.size() == 1);
    return 0;
}
