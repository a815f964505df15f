#include <QTimer>

int main() {
    QTimer t;
    t.setInterval(100);
    assert(t.interval() == 100);
    return 0;
}
