#include <QList>

int main() {
    QList<int> l;
    l.push_back(4);
    l.clear();
    l.front();
    return 0;
}
