package demo;

import java.io.File;
import java.io.IOException;
import java.io.PrintWriter;

public class ReportWriter {
    public void write(File file, String text) throws IOException {
        PrintWriter out = new PrintWriter(file);
        out.println(text);
        out.close();
    }
}
