package demo;

public class Importer {
    public void load(String path) {
        try {
            read(path);
        } catch (Exception e) {
            e.printStackTrace();
        }
    }

    private void read(String path) throws Exception {
    }
}
