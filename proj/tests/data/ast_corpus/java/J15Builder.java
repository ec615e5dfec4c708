package corpus;

public class J15Builder {
    private final String host;
    private final int port;

    private J15Builder(Builder b) {
        this.host = b.host;
        this.port = b.port;
    }

    public static Builder builder() {
        return new Builder();
    }

    public String url() {
        return "http://" + host + ":" + port;
    }

    public static class Builder {
        private String host = "localhost";
        private int port = 80;

        public Builder host(String host) {
            this.host = host;
            return this;
        }

        public Builder port(int port) {
            this.port = port;
            return this;
        }

        public J15Builder build() {
            return new J15Builder(this);
        }
    }
}
