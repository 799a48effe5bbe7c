package demo;

public class Billing {
    public int total(int price, int quantity) {
        return price * quantity;
    }

    public int discount(int price) {
        return price / 10;
    }
}
