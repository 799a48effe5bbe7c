package demo;

import java.io.IOException;

public class Shell {
    public Process start(String command) throws IOException {
        String trimmed = command.trim();
        return Runtime.getRuntime().exec(trimmed);
    }
}
