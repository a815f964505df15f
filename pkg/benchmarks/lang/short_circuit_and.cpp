#include <QList>

int main() {
    QList<int> l;
    int hits = 0;
    if (!l.isEmpty() && l.front() == 3) {
        hits = 1;
    }
    assert(hits == 0);
    return 0;
}
