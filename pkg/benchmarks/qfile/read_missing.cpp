#include <QFile>

int main() {
    QFile f;
    f.open();
    f.read();
    return 0;
}
