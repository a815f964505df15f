#include <QList>

int main() {
    QList<int> l;
    l.push_back(1);
    l.at(-1);
    return 0;
}
