#include <QTimer>

int main() {
    QTimer t;
    t.setInterval(0);
    assert(t.interval() == 0);
    return 0;
}
