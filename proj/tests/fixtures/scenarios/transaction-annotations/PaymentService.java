package demo;

import javax.ejb.TransactionAttribute;
import javax.ejb.TransactionAttributeType;

public class PaymentService {
    @TransactionAttribute(TransactionAttributeType.REQUIRES_NEW)
    public void pay(int amount) {
    }

    @TransactionAttribute(TransactionAttributeType.REQUIRES)
    public void audit() {
    }

    @TransactionAttribute(TransactionAttributeType.NOT_SUPPORTED)
    public void report() {
    }

    public void checkout() {
        pay(10);
        audit();
        report();
    }
}
