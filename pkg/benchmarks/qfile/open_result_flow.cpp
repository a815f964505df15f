#include <QFile>

int main() {
    QFile f;
    bool ok = f.open();
    if (ok) {
        int data = f.read();
        f.close();
    }
    assert(ok == f.exists());
    return 0;
}
