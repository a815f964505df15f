#include <QList>

int main() {
    QList<int> l;
    l.push_back(4);
    l.clear();
    assert(l.isEmpty());
    assert(l.size() == 0);
    return 0;
}
