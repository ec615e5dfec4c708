package corpus;

import java.util.HashMap;
import java.util.Map;

public class J16Static {
    private static final Map<String, Integer> CODES = new HashMap<>();

    static {
        CODES.put("ok", 200);
        CODES.put("missing", 404);
        CODES.put("error", 500);
    }

    public static int code(String name) {
        Integer c = CODES.get(name);
        return c == null ? -1 : c;
    }
}
