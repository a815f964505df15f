#include <QList>

int main() {
    QList<int> l;
    int ok = 0;
    if (l.isEmpty() || l.front() > 0) {
        ok = 1;
    }
    assert(ok == 1);
    return 0;
}
