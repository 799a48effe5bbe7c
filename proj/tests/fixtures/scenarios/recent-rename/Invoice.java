package demo;

public class Invoice {
    private double total;

    public void add(double amount) {
        total += amount;
    }

    public double result() {
        return total;
    }
}
