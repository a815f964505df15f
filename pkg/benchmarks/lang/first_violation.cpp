#include <QList>
#include <QTimer>

int main() {
    QList<int> l;
    QTimer t;
    l.front();
    t.setInterval(-1);
    return 0;
}
