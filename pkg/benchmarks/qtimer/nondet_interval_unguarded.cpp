#include <QTimer>

int main() {
    QTimer t;
    int msec = nondet_int();
    t.setInterval(msec);
    return 0;
}
