#include <QList>

int main() {
    QList<int> l;
    l.back();
    return 0;
}
