#include <QList>

int main() {
    QList<int> l;
    l.push_back(1);
    l.push_back(2);
    l.at(5);
    return 0;
}
