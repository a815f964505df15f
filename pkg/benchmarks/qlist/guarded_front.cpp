#include <QList>

int main() {
    QList<int> l;
    int x = 0;
    if (!l.isEmpty()) {
        x = l.front();
    }
    assert(x == 0);
    return 0;
}
