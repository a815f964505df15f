#include <QFile>

int main() {
    QFile f;
    if (f.open()) {
        f.close();
        if (f.open()) {
            f.read();
        }
    }
    return 0;
}
