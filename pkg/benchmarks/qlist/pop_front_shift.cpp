#include <QList>

int main() {
    QList<int> l;
    l.push_back(1);
    l.push_back(2);
    l.push_back(3);
    l.pop_front();
    assert(l.front() == 2);
    assert(l.size() == 2);
    return 0;
}
