#include <QList>

int main() {
    QList<int> l;
    l.front();
    return 0;
}
