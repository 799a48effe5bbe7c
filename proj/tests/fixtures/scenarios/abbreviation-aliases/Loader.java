package demo;

import java.lang.reflect.InvocationTargetException;
import java.lang.reflect.Method;
import java.util.List;

public class Loader {
    private List<String> users;

    public List<String> getUsers() {
        return users;
    }

    public void load(Method method) {
        try {
            method.invoke(this);
            System.out.println(getUsers());
        } catch (InvocationTargetException e) {
            e.printStackTrace();
        }
    }
}
