package corpus;

import java.util.concurrent.ExecutorService;
import java.util.concurrent.Executors;
import java.util.concurrent.TimeUnit;

public class J11Worker {
    private final Object lock = new Object();
    private long total;

    public long run(int tasks) throws InterruptedException {
        ExecutorService pool = Executors.newFixedThreadPool(4);
        for (int i = 0; i < tasks; i++) {
            final int n = i;
            pool.submit(() -> {
                synchronized (lock) {
                    total += n;
                }
            });
        }
        pool.shutdown();
        pool.awaitTermination(1, TimeUnit.MINUTES);
        return total;
    }
}
