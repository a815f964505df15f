#include <QFile>

int main() {
    QFile f;
    f.read();
    return 0;
}
