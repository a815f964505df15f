#include <QList>

int main() {
    QList<int> l;
    l.push_back(0);
    l.push_back(1);
    l.push_back(2);
    l.push_back(3);
    l.push_back(4);
    l.push_back(5);
    l.push_back(6);
    l.push_back(7);
    l.push_back(8);
    l.push_back(9);
    assert(l.size() == 10);
    assert(l.back() == 9);
    return 0;
}
