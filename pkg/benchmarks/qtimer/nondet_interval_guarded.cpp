#include <QTimer>

int main() {
    QTimer t;
    int msec = nondet_int();
    if (msec >= 0) {
        t.setInterval(msec);
        assert(t.interval() == msec);
    }
    return 0;
}
