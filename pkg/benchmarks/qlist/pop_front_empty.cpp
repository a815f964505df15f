#include <QList>

int main() {
    QList<int> l;
    l.pop_front();
    return 0;
}
