#include <QTimer>

int main() {
    QTimer t;
    t.start(-1);
    return 0;
}
