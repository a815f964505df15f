#include <QList>
#include <QTimer>

int main() {
    QList<int> intervals;
    intervals.push_back(100);
    intervals.push_back(250);
    QTimer t;
    t.setInterval(intervals.front());
    assert(t.interval() == 100);
    t.start(intervals.back());
    assert(t.interval() == 250);
    assert(t.isActive());
    return 0;
}
