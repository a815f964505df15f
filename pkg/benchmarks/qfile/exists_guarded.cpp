#include <QFile>

int main() {
    QFile f;
    if (f.exists()) {
        f.open();
        f.read();
    }
    return 0;
}
