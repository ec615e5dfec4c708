package corpus;

public class J01Counter {
    private int count;

    public J01Counter(int start) {
        this.count = start;
    }

    public void increment() {
        count++;
    }

    public int get() {
        return count;
    }
}
