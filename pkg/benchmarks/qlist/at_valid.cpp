#include <QList>

int main() {
    QList<int> l;
    l.push_back(10);
    l.push_back(20);
    l.push_back(30);
    assert(l.at(0) == 10);
    assert(l.at(1) == 20);
    assert(l.at(2) == 30);
    return 0;
}
