#include <QList>

int main() {
    QList<int> l;
    l.pop_back();
    return 0;
}
