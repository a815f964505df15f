#include <QFile>

int main() {
    QFile f;
    if (f.open()) {
        f.close();
        f.read();
    }
    return 0;
}
