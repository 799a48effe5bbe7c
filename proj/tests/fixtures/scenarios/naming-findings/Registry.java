package demo;

import java.util.List;

public class Registry {
    private String names;

    public int countActive(List<User> user) {
        int x = 0;
        for (int i = 0; i < user.size(); i++) {
            x++;
        }
        return x;
    }

    public void getName() {
        names = "";
    }
}
