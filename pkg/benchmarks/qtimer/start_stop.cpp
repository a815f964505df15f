#include <QTimer>

int main() {
    QTimer t;
    assert(!t.isActive());
    t.start();
    assert(t.isActive());
    t.stop();
    assert(!t.isActive());
    return 0;
}
