#include <QTimer>

int main() {
    QTimer t;
    t.start(50);
    assert(t.interval() == 50);
    assert(t.isActive());
    return 0;
}
